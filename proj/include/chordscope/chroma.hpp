#pragma once

#include <array>
#include <vector>

#include "chordscope/stft.hpp"
#include "chordscope/transform.hpp"

namespace chordscope {

/// 12-bin chroma intensity vector, indexed by pitch class (0 = C). The
/// intensities are L2-normalized per frame; `energy` keeps the in-band
/// spectral energy from before normalization so silence can still be told
/// apart downstream.
struct ChromaVector {
    std::array<double, 12> intensity{};
    double energy = 0.0;
};

/// Time-ordered chroma vectors, same frame times as the source spectrogram.
struct Chromagram {
    std::vector<ChromaVector> frames;
    std::vector<double> frame_times;
};

/// Analysis band in Hz. The default 55..2000 keeps bins that the default
/// window can resolve to a semitone and cuts the harmonic smear above 2 kHz.
struct FrequencyBand {
    double lo = 55.0;
    double hi = 2000.0;
};

/// Octave-fold one magnitude frame: every bin inside the band adds its
/// energy (magnitude squared) to the chroma class of its nearest
/// equal-tempered pitch. The result is L2-normalized; an all-zero frame
/// stays all-zero.
ChromaVector fold_to_chroma(const std::vector<double>& frame,
                            const FrequencyAxis& axis, FrequencyBand band);

/// Frame-wise fold of a whole spectrogram, frame times preserved.
Chromagram chromagram(const Spectrogram& spectrogram, FrequencyBand band = {});

} // namespace chordscope
