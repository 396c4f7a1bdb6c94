#include "chordscope/theory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace chordscope {

namespace {

constexpr const char* kSharpSign = "♯";
constexpr const char* kFlatSign = "♭";

// semitone index of each natural letter, C..B
int natural_index(char letter) {
    switch (letter) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default: throw ParseError(std::string("unknown note letter '") + letter + "'");
    }
}

constexpr std::array<char, 7> kLetters = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};

int letter_position(char letter) {
    for (int i = 0; i < 7; ++i)
        if (kLetters[static_cast<std::size_t>(i)] == letter) return i;
    throw ParseError(std::string("unknown note letter '") + letter + "'");
}

const std::array<Spelling, 12> kSharpSpellings = {{{'C', 0},
                                                   {'C', 1},
                                                   {'D', 0},
                                                   {'D', 1},
                                                   {'E', 0},
                                                   {'F', 0},
                                                   {'F', 1},
                                                   {'G', 0},
                                                   {'G', 1},
                                                   {'A', 0},
                                                   {'A', 1},
                                                   {'B', 0}}};

const std::array<Spelling, 12> kFlatSpellings = {{{'C', 0},
                                                  {'D', -1},
                                                  {'D', 0},
                                                  {'E', -1},
                                                  {'E', 0},
                                                  {'F', 0},
                                                  {'G', -1},
                                                  {'G', 0},
                                                  {'A', -1},
                                                  {'A', 0},
                                                  {'B', -1},
                                                  {'B', 0}}};

std::string render(const Spelling& s, bool ascii) {
    std::string out(1, s.letter);
    for (int i = 0; i < s.accidental; ++i) out += ascii ? "#" : kSharpSign;
    for (int i = 0; i > s.accidental; --i) out += ascii ? "b" : kFlatSign;
    return out;
}

// Spell `index` on a fixed letter, choosing the accidental with the
// smallest absolute offset from the letter's natural semitone.
Spelling spell_on_letter(char letter, int index) {
    int diff = ((index - natural_index(letter)) % 12 + 12) % 12;
    if (diff > 6) diff -= 12;
    return Spelling{letter, diff};
}

Spelling spelling_or_default(const PitchClass& pc) {
    if (pc.spelling()) return *pc.spelling();
    return kSharpSpellings[static_cast<std::size_t>(pc.index())];
}

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::vector<IntervalStep> steps_of(std::initializer_list<int> widths) {
    std::vector<IntervalStep> steps;
    for (int w : widths) steps.push_back(static_cast<IntervalStep>(w));
    return steps;
}

} // namespace

PitchClass PitchClass::from_letter(char letter, int accidental) {
    return PitchClass(natural_index(letter) + accidental,
                      Spelling{letter, accidental});
}

std::string PitchClass::name() const {
    return render(spelling_or_default(*this), false);
}

std::string PitchClass::ascii_name() const {
    return render(spelling_or_default(*this), true);
}

Pitch Pitch::from_midi(int midi, std::optional<Spelling> spelling) {
    int index = ((midi % 12) + 12) % 12;
    int octave = floor_div(midi, 12) - 1;
    PitchClass pc = spelling ? PitchClass(index, *spelling) : PitchClass(index);
    return Pitch{pc, octave};
}

std::string Pitch::name() const {
    return pitch_class.name() + std::to_string(octave);
}

int ScaleSpec::total_semitones() const {
    return std::accumulate(steps.begin(), steps.end(), 0,
                           [](int acc, IntervalStep s) { return acc + semitones(s); });
}

void ScaleSpec::validate() const {
    if (steps.empty())
        throw ValidationError("scale spec '" + name + "' has no steps");
    if (total_semitones() != 12)
        throw ValidationError("scale spec '" + name + "' spans " +
                              std::to_string(total_semitones()) +
                              " semitones, expected 12");
}

const std::array<ScaleSpec, 5>& scale_table() {
    static const std::array<ScaleSpec, 5> table = {{
        {"chromatic", steps_of({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})},
        {"major", steps_of({2, 2, 1, 2, 2, 2, 1})},
        {"minor", steps_of({2, 1, 2, 2, 1, 2, 2})},
        {"diminished", steps_of({1, 2, 1, 2, 1, 2, 1, 2})},
        {"augmented", steps_of({3, 1, 3, 1, 3, 1})},
    }};
    return table;
}

const ScaleSpec& scale_spec(ScaleKind kind) {
    return scale_table()[static_cast<std::size_t>(kind)];
}

std::optional<ScaleKind> parse_scale_kind(std::string_view name) {
    const auto& table = scale_table();
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i].name == name) return static_cast<ScaleKind>(i);
    return std::nullopt;
}

std::string family_name(ChordFamily family) {
    switch (family) {
    case ChordFamily::Maj: return "maj";
    case ChordFamily::Min: return "min";
    case ChordFamily::Dim: return "dim";
    case ChordFamily::Aug: return "aug";
    case ChordFamily::Maj7: return "maj7";
    case ChordFamily::Min7: return "min7";
    case ChordFamily::Dom7: return "dom7";
    }
    return "?";
}

std::optional<ChordFamily> parse_chord_family(std::string_view name) {
    for (ChordFamily f : all_chord_families)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

const ChordSpec& chord_spec(ChordFamily family) {
    static const std::array<ChordSpec, 7> specs = {{
        {ChordFamily::Maj, {0, 4, 7}},
        {ChordFamily::Min, {0, 3, 7}},
        {ChordFamily::Dim, {0, 3, 6}},
        {ChordFamily::Aug, {0, 4, 8}},
        {ChordFamily::Maj7, {0, 4, 7, 11}},
        {ChordFamily::Min7, {0, 3, 7, 10}},
        {ChordFamily::Dom7, {0, 4, 7, 10}},
    }};
    return specs[static_cast<std::size_t>(family)];
}

double pitch_to_frequency(const Pitch& p, double reference) {
    if (reference <= 0.0)
        throw DomainError("pitch_to_frequency: reference must be positive");
    return reference * std::exp2(p.semitones_from_a4() / 12.0);
}

NearestPitch frequency_to_pitch(double frequency, double reference) {
    if (frequency <= 0.0)
        throw DomainError("frequency_to_pitch: frequency must be positive");
    if (reference <= 0.0)
        throw DomainError("frequency_to_pitch: reference must be positive");
    double s = 12.0 * std::log2(frequency / reference);
    // floor(s + 0.5) rounds exact half-semitone deviations up
    double nearest = std::floor(s + 0.5);
    NearestPitch result;
    result.pitch = Pitch::from_midi(69 + static_cast<int>(nearest));
    result.cents = (s - nearest) * 100.0;
    return result;
}

std::vector<PitchClass> build_scale(const PitchClass& root,
                                    const ScaleSpec& spec,
                                    Direction direction) {
    spec.validate();
    const bool ascending = direction == Direction::Ascending;

    std::vector<int> offsets{0};
    if (ascending) {
        for (IntervalStep s : spec.steps)
            offsets.push_back(offsets.back() + semitones(s));
    } else {
        for (auto it = spec.steps.rbegin(); it != spec.steps.rend(); ++it)
            offsets.push_back(offsets.back() - semitones(*it));
    }

    const Spelling root_spelling = spelling_or_default(root);
    std::vector<PitchClass> out;
    out.reserve(offsets.size());

    if (spec.steps.size() == 7) {
        // heptatonic scales take one letter per degree
        const int root_pos = letter_position(root_spelling.letter);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            int pos = ascending ? root_pos + static_cast<int>(i)
                                : root_pos - static_cast<int>(i);
            char letter = kLetters[static_cast<std::size_t>(((pos % 7) + 7) % 7)];
            int index = root.index() + offsets[i];
            out.emplace_back(index, spell_on_letter(letter, index));
        }
    } else {
        // non-heptatonic scales: sharps going up, flats coming down
        const auto& names = ascending ? kSharpSpellings : kFlatSpellings;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            int index = ((root.index() + offsets[i]) % 12 + 12) % 12;
            Spelling sp = (offsets[i] % 12 == 0)
                              ? root_spelling
                              : names[static_cast<std::size_t>(index)];
            out.emplace_back(index, sp);
        }
    }
    return out;
}

std::vector<Pitch> scale_pitches(const Pitch& root, const ScaleSpec& spec,
                                 Direction direction) {
    std::vector<PitchClass> classes = build_scale(root.pitch_class, spec, direction);
    const int sign = direction == Direction::Ascending ? 1 : -1;

    std::vector<Pitch> out;
    out.reserve(classes.size());
    int offset = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i > 0) offset += sign * semitones(spec.steps[direction == Direction::Ascending
                                                             ? i - 1
                                                             : spec.steps.size() - i]);
        out.push_back(Pitch::from_midi(root.midi() + offset, classes[i].spelling()));
    }
    return out;
}

VoicedChord build_chord(const PitchClass& root, const ChordSpec& spec,
                        int base_octave) {
    const Spelling root_spelling = spelling_or_default(root);
    const int root_pos = letter_position(root_spelling.letter);
    const Pitch root_pitch{PitchClass(root.index(), root_spelling), base_octave};

    VoicedChord chord;
    for (std::size_t i = 0; i < spec.degrees.size(); ++i) {
        // chords stack thirds: degree i lives two letters above degree i-1
        char letter = kLetters[static_cast<std::size_t>((root_pos + 2 * i) % 7)];
        int index = root.index() + spec.degrees[i];
        chord.notes.push_back(
            Pitch::from_midi(root_pitch.midi() + spec.degrees[i],
                             spell_on_letter(letter, index)));
    }
    return chord;
}

VoicedChord invert(VoicedChord chord) {
    if (chord.notes.empty())
        throw ValidationError("invert: chord has no notes");
    Pitch raised = chord.notes.front();
    raised.octave += 1;
    chord.notes.erase(chord.notes.begin());
    auto pos = std::upper_bound(chord.notes.begin(), chord.notes.end(), raised,
                                [](const Pitch& a, const Pitch& b) {
                                    return a.midi() < b.midi();
                                });
    chord.notes.insert(pos, raised);
    chord.inversion += 1;
    return chord;
}

ChordCatalog enumerate_chords() {
    ChordCatalog catalog;
    for (char letter : kLetters) {
        for (int accidental : {0, 1, -1}) {
            PitchClass root = PitchClass::from_letter(letter, accidental);
            for (ChordFamily family : all_chord_families) {
                const int forms = chord_spec(family).degrees.size() == 3 ? 2 : 3;
                for (int form = 1; form <= forms; ++form)
                    catalog.entries.push_back({root, family, form});
            }
        }
    }
    return catalog;
}

namespace {

// consume one accidental at the front, if any; returns its width in bytes
std::size_t take_accidental(std::string_view text, int& accidental) {
    if (text.empty()) return 0;
    if (text[0] == '#') { ++accidental; return 1; }
    if (text[0] == 'b') { --accidental; return 1; }
    if (text.substr(0, 3) == kSharpSign) { ++accidental; return 3; }
    if (text.substr(0, 3) == kFlatSign) { --accidental; return 3; }
    return 0;
}

Spelling parse_spelling(std::string_view text, std::size_t& used) {
    if (text.empty()) throw ParseError("empty note name");
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    natural_index(letter); // validates
    used = 1;
    int accidental = 0;
    while (std::size_t n = take_accidental(text.substr(used), accidental)) used += n;
    return Spelling{letter, accidental};
}

} // namespace

PitchClass parse_pitch_class(std::string_view text) {
    std::size_t used = 0;
    Spelling sp = parse_spelling(text, used);
    if (used != text.size())
        throw ParseError("trailing characters in note name '" + std::string(text) + "'");
    return PitchClass::from_letter(sp.letter, sp.accidental);
}

Pitch parse_pitch(std::string_view text) {
    std::size_t used = 0;
    Spelling sp = parse_spelling(text, used);
    std::string_view rest = text.substr(used);
    if (rest.empty())
        throw ParseError("note '" + std::string(text) + "' is missing its octave");
    int octave = 0;
    bool negative = false;
    std::size_t i = 0;
    if (rest[0] == '-') { negative = true; i = 1; }
    if (i == rest.size())
        throw ParseError("bad octave in note '" + std::string(text) + "'");
    for (; i < rest.size(); ++i) {
        if (rest[i] < '0' || rest[i] > '9')
            throw ParseError("bad octave in note '" + std::string(text) + "'");
        octave = octave * 10 + (rest[i] - '0');
    }
    if (negative) octave = -octave;
    return Pitch{PitchClass::from_letter(sp.letter, sp.accidental), octave};
}

} // namespace chordscope
