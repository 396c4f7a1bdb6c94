#include "chordscope/stft.hpp"

#include <cmath>
#include <numbers>

namespace chordscope {

void StftConfig::validate() const {
    if (!is_power_of_two(window_size))
        throw ValidationError("stft config: window size " +
                              std::to_string(window_size) +
                              " is not a power of two");
    if (hop == 0 || hop > window_size)
        throw ValidationError("stft config: hop must satisfy 0 < hop <= window size");
    if (sample_rate <= 0.0)
        throw ValidationError("stft config: sample rate must be positive");
}

std::vector<double> hann_window(std::size_t n) {
    if (n == 0) throw ValidationError("hann_window: length must be >= 1");
    if (n == 1) return {1.0};
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j)
        w[j] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>(j) /
                                     static_cast<double>(n - 1)));
    return w;
}

Spectrogram stft(const std::vector<double>& signal, const StftConfig& config) {
    config.validate();
    if (signal.size() < config.window_size)
        throw ValidationError("stft: signal has " + std::to_string(signal.size()) +
                              " samples, shorter than one window of " +
                              std::to_string(config.window_size));

    const std::size_t w = config.window_size;
    const std::size_t frame_count = (signal.size() - w) / config.hop + 1;
    const std::vector<double> window = config.window_fn == WindowFn::Hann
                                           ? hann_window(w)
                                           : std::vector<double>(w, 1.0);

    Spectrogram out;
    out.config = config;
    out.frames.reserve(frame_count);
    out.frame_times.reserve(frame_count);

    ComplexSequence buffer(w);
    for (std::size_t j = 0; j < frame_count; ++j) {
        const std::size_t start = j * config.hop;
        for (std::size_t i = 0; i < w; ++i)
            buffer[i] = signal[start + i] * window[i];
        Spectrum spectrum = fft(buffer);

        std::vector<double> magnitudes(w / 2 + 1);
        for (std::size_t k = 0; k < magnitudes.size(); ++k)
            magnitudes[k] = std::abs(spectrum[k]);
        out.frames.push_back(std::move(magnitudes));
        out.frame_times.push_back(
            (static_cast<double>(start) + static_cast<double>(w) / 2.0) /
            config.sample_rate);
    }
    return out;
}

} // namespace chordscope
