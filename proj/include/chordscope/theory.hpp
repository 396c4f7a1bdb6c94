#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chordscope/common.hpp"

namespace chordscope {

/// Enharmonic note name: a letter A..G plus an accidental offset in
/// semitones (-2 = double flat ... +2 = double sharp).
struct Spelling {
    char letter = 'C';
    int accidental = 0;
};

/// Octave-folded note identity. Index 0 = C, 1 = C#/Db, ..., 11 = B.
///
/// The optional spelling is presentation only: two PitchClass values with
/// the same index compare equal no matter how they are spelled.
class PitchClass {
public:
    PitchClass() = default;
    explicit PitchClass(int index) : index_(reduce(index)) {}
    PitchClass(int index, Spelling spelling)
        : index_(reduce(index)), spelling_(spelling) {}

    static PitchClass from_letter(char letter, int accidental = 0);

    int index() const { return index_; }
    const std::optional<Spelling>& spelling() const { return spelling_; }

    /// Display name; falls back to the sharp-preferring name when the
    /// value carries no explicit spelling.
    std::string name() const;
    /// Name using ASCII accidentals ('#'/'b') instead of the unicode signs.
    std::string ascii_name() const;

    friend bool operator==(const PitchClass& a, const PitchClass& b) {
        return a.index_ == b.index_;
    }
    friend bool operator!=(const PitchClass& a, const PitchClass& b) {
        return !(a == b);
    }

private:
    static int reduce(int i) { return ((i % 12) + 12) % 12; }

    int index_ = 0;
    std::optional<Spelling> spelling_;
};

/// Octave-qualified note in scientific pitch notation (A4 is the 440 Hz
/// orchestral tuning reference).
struct Pitch {
    PitchClass pitch_class;
    int octave = 4;

    /// MIDI note number; C4 = 60, A4 = 69.
    int midi() const { return (octave + 1) * 12 + pitch_class.index(); }
    int semitones_from_a4() const { return midi() - 69; }
    static Pitch from_midi(int midi, std::optional<Spelling> spelling = {});

    std::string name() const;

    friend bool operator==(const Pitch& a, const Pitch& b) {
        return a.midi() == b.midi();
    }
    friend bool operator!=(const Pitch& a, const Pitch& b) { return !(a == b); }
};

/// Scale-building interval: half step, whole step, or augmented second.
enum class IntervalStep { Half = 1, Whole = 2, AugmentedSecond = 3 };

inline int semitones(IntervalStep s) { return static_cast<int>(s); }

enum class ScaleKind { Chromatic, Major, Minor, Diminished, Augmented };

/// Interval pattern of a scale. The step widths must sum to exactly 12
/// semitones so the scale closes back on its root an octave away.
struct ScaleSpec {
    std::string name;
    std::vector<IntervalStep> steps;

    int total_semitones() const;
    void validate() const; // throws ValidationError unless the sum is 12
};

/// The built-in scale table: chromatic, major, natural minor, diminished,
/// augmented.
const std::array<ScaleSpec, 5>& scale_table();
const ScaleSpec& scale_spec(ScaleKind kind);
std::optional<ScaleKind> parse_scale_kind(std::string_view name);

/// Chord family. The enumerator order (maj, min, dim, aug, maj7, min7,
/// dom7) doubles as the detector's tie-break order; keep it stable.
enum class ChordFamily { Maj, Min, Dim, Aug, Maj7, Min7, Dom7 };

inline constexpr std::array<ChordFamily, 7> all_chord_families = {
    ChordFamily::Maj,  ChordFamily::Min,  ChordFamily::Dim, ChordFamily::Aug,
    ChordFamily::Maj7, ChordFamily::Min7, ChordFamily::Dom7};

std::string family_name(ChordFamily family);
std::optional<ChordFamily> parse_chord_family(std::string_view name);

/// Semitone offsets of a chord family from its root: maj = {0,4,7},
/// dom7 = {0,4,7,10}, and so on. Triads have 3 degrees, sevenths 4.
struct ChordSpec {
    ChordFamily family = ChordFamily::Maj;
    std::vector<int> degrees;
};

const ChordSpec& chord_spec(ChordFamily family);

/// A chord voiced as concrete pitches, ascending in frequency, plus the
/// number of inversions applied so far.
struct VoicedChord {
    std::vector<Pitch> notes;
    int inversion = 0;
};

enum class Direction { Ascending, Descending };

/// Equal-tempered frequency of a pitch: reference * 2^(s/12) with s the
/// signed semitone distance from A4.
double pitch_to_frequency(const Pitch& p, double reference = 440.0);

struct NearestPitch {
    Pitch pitch;
    double cents = 0.0; // signed deviation, in [-50, +50)
};

/// Nearest equal-tempered pitch for a frequency, with the residual in
/// cents. Ties at exactly +-50 cents round toward the higher pitch.
NearestPitch frequency_to_pitch(double frequency, double reference = 440.0);

/// Pitch classes of a scale, root to root. Ascending applies the step
/// widths upward in order; descending applies the reversed order downward.
/// First and last entry equal the root.
std::vector<PitchClass> build_scale(const PitchClass& root,
                                    const ScaleSpec& spec,
                                    Direction direction = Direction::Ascending);

/// Same traversal voiced as concrete pitches starting from `root`, for
/// synthesis and display.
std::vector<Pitch> scale_pitches(const Pitch& root, const ScaleSpec& spec,
                                 Direction direction = Direction::Ascending);

/// Root-position chord: note i sits degrees[i] semitones above the root
/// voiced in base_octave.
VoicedChord build_chord(const PitchClass& root, const ChordSpec& spec,
                        int base_octave = 4);

/// One chord inversion: the lowest note is raised an octave and the chord
/// re-sorted. The pitch-class multiset is unchanged.
VoicedChord invert(VoicedChord chord);

/// One row of the chord enumeration: a spelled root, a family, and an
/// inversion form (1st/2nd inversion for triads, 1st/2nd/3rd for sevenths).
struct ChordCatalogEntry {
    PitchClass root;
    ChordFamily family = ChordFamily::Maj;
    int inversion_form = 1;
};

struct ChordCatalog {
    std::vector<ChordCatalogEntry> entries;
    std::size_t count() const { return entries.size(); }
};

/// Full chord catalog over 21 spelled roots (7 letters x natural/sharp/flat):
/// 4 triad families x 2 inversion forms plus 3 seventh families x 3 forms
/// per root, 357 entries in all.
ChordCatalog enumerate_chords();

/// Parse "C", "F#", "Bb", unicode accidentals included. Throws ParseError.
PitchClass parse_pitch_class(std::string_view text);
/// Parse "C4", "F#3", "Bb-1". Throws ParseError.
Pitch parse_pitch(std::string_view text);

} // namespace chordscope
