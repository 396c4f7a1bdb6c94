#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "chordscope/chroma.hpp"
#include "chordscope/theory.hpp"

namespace chordscope {

/// Binary 12-dim pitch-class mask of a chord: ones at (root + degree) mod
/// 12. Triad masks carry 3 ones, seventh masks 4.
struct ChordTemplate {
    PitchClass root;
    ChordFamily family = ChordFamily::Maj;
    std::array<double, 12> mask{};
    std::array<double, 12> normalized{}; // mask / ||mask||
};

ChordTemplate make_template(const PitchClass& root, ChordFamily family);

/// The 84 templates (12 roots x 7 families) in tie-break order: roots
/// ascending, families in declaration order. Note the augmented templates
/// repeat every four roots — an augmented triad's mask is invariant under
/// rotation by a major third — so only 76 of the 84 vectors are distinct.
const std::vector<ChordTemplate>& standard_templates();

/// Frame-level detection result: a (root, family) pair with its cosine
/// score, or the distinguished no-chord value for silent frames.
struct ChordLabel {
    bool is_chord = false;
    PitchClass root;
    ChordFamily family = ChordFamily::Maj;
    double score = 0.0; // cosine similarity, meaningful when is_chord

    static ChordLabel no_chord() { return {}; }
    static ChordLabel chord(const PitchClass& root, ChordFamily family,
                            double score) {
        return {true, root, family, score};
    }

    /// "C:maj", "F#:min7", ... with sharps-only spelling; "N" for no-chord.
    std::string name() const;

    // score is diagnostic, not identity
    friend bool operator==(const ChordLabel& a, const ChordLabel& b) {
        if (a.is_chord != b.is_chord) return false;
        if (!a.is_chord) return true;
        return a.root == b.root && a.family == b.family;
    }
    friend bool operator!=(const ChordLabel& a, const ChordLabel& b) {
        return !(a == b);
    }
};

/// Best-matching template by cosine similarity. Frames whose
/// pre-normalization energy falls below silence_threshold come back as
/// no-chord. Ties break deterministically toward the earliest template in
/// the set ordering (lowest root, then family order).
ChordLabel match_frame(const ChromaVector& chroma,
                       std::span<const ChordTemplate> templates,
                       double silence_threshold);

/// Modal smoothing: each frame's label becomes the most frequent label in
/// the centered window (truncated at the track edges); count ties keep the
/// frame's original label. Window must be odd; 1 is the identity.
std::vector<ChordLabel> smooth_labels(const std::vector<ChordLabel>& labels,
                                      int median_window);

/// A run of identically-labeled frames. The label's score holds the mean
/// frame score over the run.
struct ChordSegment {
    double start_s = 0.0;
    double end_s = 0.0;
    ChordLabel label;
};

/// Frame-wise matching, modal smoothing, and merging of consecutive equal
/// labels into time segments. The silence threshold is silence_rel times
/// the track's maximum frame energy, so it survives arbitrary input gain.
std::vector<ChordSegment> label_track(const Chromagram& chromagram,
                                      int median_window,
                                      double silence_rel = 1e-4);

} // namespace chordscope
