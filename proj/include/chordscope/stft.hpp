#pragma once

#include <cstddef>
#include <vector>

#include "chordscope/common.hpp"
#include "chordscope/transform.hpp"

namespace chordscope {

enum class WindowFn { Rectangular, Hann };

/// Short-time analysis parameters. Defaults (4096-sample Hann window,
/// 1024-sample hop) give roughly 2.7 Hz bins at 11025 Hz with 75% overlap.
struct StftConfig {
    std::size_t window_size = 4096; // power of two
    std::size_t hop = 1024;         // 0 < hop <= window_size
    WindowFn window_fn = WindowFn::Hann;
    double sample_rate = 11025.0;

    void validate() const;
};

/// Time-ordered magnitude spectra. Each frame keeps bins 0..window_size/2;
/// for real input the upper half of the spectrum is redundant.
struct Spectrogram {
    std::vector<std::vector<double>> frames;
    std::vector<double> frame_times; // window centers, seconds
    StftConfig config;
};

/// Hann window, w[j] = 0.5 * (1 - cos(2pi j / (n-1))). n = 1 gives [1].
std::vector<double> hann_window(std::size_t n);

/// Windowed short-time Fourier magnitudes. Produces
/// floor((len - window_size)/hop) + 1 frames; trailing samples that do not
/// fill a window are dropped.
Spectrogram stft(const std::vector<double>& signal, const StftConfig& config);

} // namespace chordscope
