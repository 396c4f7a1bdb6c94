#include "chordscope/transform.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <utility>

namespace chordscope {

namespace {

using TwiddleTable = std::vector<Complex>;

// Forward twiddles e^{-i2pi j/N} for j < N/2, built once per size and
// shared across calls. Readers hold a shared_ptr, so entries stay valid
// regardless of concurrent lookups.
std::shared_ptr<const TwiddleTable> twiddles_for(std::size_t n) {
    static std::mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const TwiddleTable>> cache;

    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }

    auto table = std::make_shared<TwiddleTable>(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j)
        (*table)[j] = std::polar(1.0, -2.0 * std::numbers::pi *
                                          static_cast<double>(j) /
                                          static_cast<double>(n));

    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(n, std::move(table));
    return it->second;
}

void bit_reverse_permute(ComplexSequence& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0, j = 0; i < n; ++i) {
        if (i < j) std::swap(a[i], a[j]);
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
    }
}

// In-place radix-2 butterflies; conjugate = true runs the +i kernel.
void fft_pow2_inplace(ComplexSequence& a, bool conjugate) {
    const std::size_t n = a.size();
    if (n == 1) return;
    auto twiddles = twiddles_for(n);

    bit_reverse_permute(a);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                Complex w = (*twiddles)[j * stride];
                if (conjugate) w = std::conj(w);
                Complex lo = a[start + j];
                Complex hi = a[start + j + half] * w;
                a[start + j] = lo + hi;
                a[start + j + half] = lo - hi;
            }
        }
    }
}

void require_power_of_two(std::size_t n, const char* op) {
    if (n == 0)
        throw ValidationError(std::string(op) + ": input must contain at least one sample");
    if (!is_power_of_two(n))
        throw ValidationError(std::string(op) + ": size " + std::to_string(n) +
                              " is not a power of two");
}

} // namespace

Spectrum dft_naive(const ComplexSequence& x) {
    const std::size_t n = x.size();
    if (n == 0)
        throw ValidationError("dft_naive: input must contain at least one sample");

    // One row of kernel values; the exponent nk only enters mod N, so the
    // row at index (n*k) mod N covers the whole matrix.
    std::vector<Complex> kernel(n);
    for (std::size_t m = 0; m < n; ++m)
        kernel[m] = std::polar(1.0, -2.0 * std::numbers::pi *
                                        static_cast<double>(m) /
                                        static_cast<double>(n));

    Spectrum out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        std::size_t idx = 0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += x[m] * kernel[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

Spectrum fft(const ComplexSequence& x) {
    require_power_of_two(x.size(), "fft");
    Spectrum out = x;
    fft_pow2_inplace(out, false);
    return out;
}

ComplexSequence ifft(const Spectrum& spectrum) {
    require_power_of_two(spectrum.size(), "ifft");
    ComplexSequence out = spectrum;
    fft_pow2_inplace(out, true);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (Complex& v : out) v *= scale;
    return out;
}

double FrequencyAxis::bin_frequency(std::size_t k) const {
    if (k <= size / 2) return static_cast<double>(k) * bin_spacing;
    return (static_cast<double>(k) - static_cast<double>(size)) * bin_spacing;
}

FrequencyAxis frequency_axis(std::size_t n, double sample_interval) {
    if (n == 0)
        throw DomainError("frequency_axis: need at least one sample");
    if (sample_interval <= 0.0)
        throw DomainError("frequency_axis: sample interval must be positive");
    FrequencyAxis axis;
    axis.size = n;
    axis.sample_interval = sample_interval;
    axis.duration = static_cast<double>(n) * sample_interval;
    axis.bin_spacing = 1.0 / axis.duration;
    axis.bandwidth = static_cast<double>(n) * axis.bin_spacing;
    return axis;
}

double speedup_ratio(double n) {
    if (n < 2.0)
        throw DomainError("speedup_ratio: defined for n >= 2");
    return n / std::log2(n);
}

} // namespace chordscope
