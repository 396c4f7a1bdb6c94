#include "chordscope/chroma.hpp"

#include <cmath>

#include "chordscope/theory.hpp"

namespace chordscope {

namespace {

void validate_band(const FrequencyBand& band, const FrequencyAxis& axis) {
    if (!(band.lo > 0.0) || !(band.lo < band.hi))
        throw ValidationError("chroma band: need 0 < lo < hi");
    const double nyquist = axis.bandwidth / 2.0;
    if (band.hi > nyquist)
        throw ValidationError("chroma band: hi " + std::to_string(band.hi) +
                              " Hz exceeds the Nyquist frequency " +
                              std::to_string(nyquist) + " Hz");
}

} // namespace

ChromaVector fold_to_chroma(const std::vector<double>& frame,
                            const FrequencyAxis& axis, FrequencyBand band) {
    validate_band(band, axis);

    ChromaVector chroma;
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const double freq = static_cast<double>(k) * axis.bin_spacing;
        if (freq < band.lo || freq > band.hi) continue;
        const int pc = frequency_to_pitch(freq).pitch.pitch_class.index();
        chroma.intensity[static_cast<std::size_t>(pc)] += frame[k] * frame[k];
    }

    double norm_sq = 0.0;
    for (double v : chroma.intensity) {
        chroma.energy += v;
        norm_sq += v * v;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : chroma.intensity) v *= inv;
    }
    return chroma;
}

Chromagram chromagram(const Spectrogram& spectrogram, FrequencyBand band) {
    const FrequencyAxis axis = frequency_axis(
        spectrogram.config.window_size, 1.0 / spectrogram.config.sample_rate);

    Chromagram out;
    out.frame_times = spectrogram.frame_times;
    out.frames.reserve(spectrogram.frames.size());
    for (const auto& frame : spectrogram.frames)
        out.frames.push_back(fold_to_chroma(frame, axis, band));
    return out;
}

} // namespace chordscope
