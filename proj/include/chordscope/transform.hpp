#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "chordscope/common.hpp"

namespace chordscope {

using Complex = std::complex<double>;

/// Time-domain sample vector (complex so transforms compose freely).
using ComplexSequence = std::vector<Complex>;
/// Frequency-domain counterpart: bin k holds F_k = sum_n x_n e^{-i2pi nk/N}.
using Spectrum = std::vector<Complex>;

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

/// Full O(N^2) evaluation of the transform kernel, any N >= 1. Slow by
/// construction; serves as the correctness oracle for fft().
Spectrum dft_naive(const ComplexSequence& x);

/// Radix-2 decimation-in-time FFT (iterative, bit-reversal order,
/// precomputed twiddles). Same values as dft_naive; N must be a power of
/// two.
Spectrum fft(const ComplexSequence& x);

/// Inverse transform, x_n = (1/N) sum_k F_k e^{+i2pi nk/N}, so that
/// ifft(fft(x)) == x. N must be a power of two.
ComplexSequence ifft(const Spectrum& spectrum);

/// Grid bookkeeping for an N-point transform of samples spaced dt apart:
/// the samples cover L = N*dt seconds, bins are spaced dnu = 1/L Hz, and
/// the spectrum spans omega = N*dnu Hz. Equivalently dt*dnu = 1/N.
struct FrequencyAxis {
    std::size_t size = 0;         // N
    double sample_interval = 0.0; // dt, seconds
    double duration = 0.0;        // L = N*dt, seconds
    double bin_spacing = 0.0;     // dnu = 1/L, Hz
    double bandwidth = 0.0;       // omega = N*dnu, Hz

    /// Signed frequency of bin k: k*dnu up to N/2, (k-N)*dnu above.
    double bin_frequency(std::size_t k) const;
};

FrequencyAxis frequency_axis(std::size_t n, double sample_interval);

/// Operation-count ratio of the O(n^2) matrix transform over the
/// O(n log2 n) FFT: n / log2(n). Defined for n >= 2.
double speedup_ratio(double n);

} // namespace chordscope
