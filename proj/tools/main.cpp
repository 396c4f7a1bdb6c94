#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chordscope/audio_io.hpp"
#include "chordscope/chroma.hpp"
#include "chordscope/detect.hpp"
#include "chordscope/formats.hpp"
#include "chordscope/stft.hpp"
#include "chordscope/theory.hpp"
#include "chordscope/transform.hpp"

namespace {

using namespace chordscope;

/// Bad flag values that CLI11 cannot catch on its own; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << text;
}

Pitch pitch_arg(const std::string& text, int default_octave = 4) {
    try {
        return parse_pitch(text);
    } catch (const ParseError&) {
        // fall back to a bare pitch class like "C" or "F#"
        try {
            return Pitch{parse_pitch_class(text), default_octave};
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
}

PitchClass pitch_class_arg(const std::string& text) {
    try {
        return parse_pitch_class(text);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

Direction direction_arg(const std::string& name) {
    if (name == "asc" || name == "ascending") return Direction::Ascending;
    if (name == "desc" || name == "descending") return Direction::Descending;
    throw UsageError("unknown direction '" + name + "', expected asc or desc");
}

ScaleKind scale_kind_arg(const std::string& name) {
    if (auto kind = parse_scale_kind(name)) return *kind;
    throw UsageError("unknown scale kind '" + name +
                     "', expected chromatic, major, minor, diminished or augmented");
}

ChordFamily family_arg(const std::string& name) {
    if (auto family = parse_chord_family(name)) return *family;
    throw UsageError("unknown chord family '" + name +
                     "', expected maj, min, dim, aug, maj7, min7 or dom7");
}

WindowFn window_fn_arg(const std::string& name) {
    if (name == "hann") return WindowFn::Hann;
    if (name == "rect" || name == "rectangular") return WindowFn::Rectangular;
    throw UsageError("unknown window function '" + name + "', expected hann or rect");
}

void report_wav(const std::string& path, const AudioBuffer& buffer) {
    std::printf("wrote %s: %.3f s, %zu samples @ %g Hz\n", path.c_str(),
                buffer.duration(), buffer.samples.size(), buffer.sample_rate);
}

// synth specs are built entirely from flags, so a rejected spec is the
// user's mistake, not a data error
AudioBuffer synth_checked(const SynthSpec& spec) {
    try {
        return synth(spec);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
}

// ---- synth ----------------------------------------------------------------

struct SynthScaleOpts {
    std::string root = "C4";
    std::string kind = "major";
    std::string direction = "asc";
    double note_dur = 0.4;
    double amp = 0.8;
    double rate = 11025.0;
    std::string out = "out.wav";
};

void run_synth_scale(const SynthScaleOpts& o) {
    const std::vector<Pitch> notes =
        scale_pitches(pitch_arg(o.root), scale_spec(scale_kind_arg(o.kind)),
                      direction_arg(o.direction));
    SynthSpec spec;
    spec.sample_rate = o.rate;
    for (std::size_t i = 0; i < notes.size(); ++i)
        spec.events.push_back({static_cast<double>(i) * o.note_dur, o.note_dur,
                               {notes[i]}, o.amp, 0.0});
    const AudioBuffer buffer = synth_checked(spec);
    write_wav_file(o.out, buffer);
    report_wav(o.out, buffer);
}

struct SynthChordOpts {
    std::string root = "C4";
    std::string family = "maj";
    int inversion = 0;
    double dur = 2.0;
    double amp = 0.0; // 0 = auto: 0.9 split across the chord tones
    double rate = 11025.0;
    std::string out = "out.wav";
};

void run_synth_chord(const SynthChordOpts& o) {
    const Pitch root = pitch_arg(o.root);
    VoicedChord chord =
        build_chord(root.pitch_class, chord_spec(family_arg(o.family)), root.octave);
    const int max_inversion = static_cast<int>(chord.notes.size()) - 1;
    if (o.inversion < 0 || o.inversion > max_inversion)
        throw UsageError("inversion must be between 0 and " +
                         std::to_string(max_inversion) + " for this chord");
    for (int i = 0; i < o.inversion; ++i) chord = invert(std::move(chord));

    const double amp =
        o.amp > 0.0 ? o.amp : 0.9 / static_cast<double>(chord.notes.size());
    SynthSpec spec;
    spec.sample_rate = o.rate;
    spec.events.push_back({0.0, o.dur, chord.notes, amp, 0.0});
    const AudioBuffer buffer = synth_checked(spec);
    write_wav_file(o.out, buffer);
    report_wav(o.out, buffer);
}

struct SynthToneOpts {
    std::string pitch = "A4";
    double dur = 1.0;
    double amp = 0.8;
    double rate = 11025.0;
    std::string out = "out.wav";
};

void run_synth_tone(const SynthToneOpts& o) {
    SynthSpec spec;
    spec.sample_rate = o.rate;
    spec.events.push_back({0.0, o.dur, {pitch_arg(o.pitch)}, o.amp, 0.0});
    const AudioBuffer buffer = synth_checked(spec);
    write_wav_file(o.out, buffer);
    report_wav(o.out, buffer);
}

// ---- analysis -------------------------------------------------------------

struct AnalysisOpts {
    std::string in;
    std::size_t window = 4096;
    std::size_t hop = 1024;
    std::string window_fn = "hann";
    double band_lo = 55.0;
    double band_hi = 2000.0;
    int median = 5;
    double silence_threshold = 1e-4;
    std::string format = "csv";
    std::string out = "-";
};

Spectrogram analyze(const AnalysisOpts& o) {
    StftConfig config;
    config.window_size = o.window;
    config.hop = o.hop;
    config.window_fn = window_fn_arg(o.window_fn);
    try {
        config.validate(); // flag values, checked before touching the input
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const AudioBuffer buffer = read_wav_file(o.in);
    config.sample_rate = buffer.sample_rate;
    return stft(buffer.samples, config);
}

std::string render_matrix(const TimedMatrix& m, const std::string& format,
                          bool log_compress) {
    OutputFormat parsed;
    try {
        parsed = parse_output_format(format);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    switch (parsed) {
    case OutputFormat::Csv: return to_csv(m);
    case OutputFormat::Json: return to_json(m);
    case OutputFormat::Pgm: return to_pgm(m, log_compress);
    }
    throw UsageError("unknown output format '" + format + "'");
}

void run_spectrogram(const AnalysisOpts& o) {
    write_text(o.out, render_matrix(to_matrix(analyze(o)), o.format, true));
}

void run_chromagram(const AnalysisOpts& o) {
    const Chromagram chroma = chromagram(analyze(o), {o.band_lo, o.band_hi});
    write_text(o.out, render_matrix(to_matrix(chroma), o.format, false));
}

void run_chords(const AnalysisOpts& o) {
    if (o.median < 1 || o.median % 2 == 0)
        throw UsageError("--median must be odd and >= 1");
    const Chromagram chroma = chromagram(analyze(o), {o.band_lo, o.band_hi});
    const std::vector<ChordSegment> segments =
        label_track(chroma, o.median, o.silence_threshold);
    write_text(o.out, segments_to_json(segments));
}

// ---- bench ----------------------------------------------------------------

struct BenchOpts {
    std::vector<std::size_t> sizes = {16, 256, 4096};
    int reps = 5;
    std::string out = "-";
};

template <typename F>
double median_seconds(F&& body, int reps) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void run_bench(const BenchOpts& o) {
    if (o.reps < 1) throw UsageError("bench repetitions must be >= 1");
    for (std::size_t n : o.sizes) {
        if (!is_power_of_two(n))
            throw UsageError("bench size " + std::to_string(n) +
                             " is not a power of two");
        if (n < 2) throw UsageError("bench sizes must be >= 2");
    }

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::string csv = "n,t_naive_s,t_fft_s,ratio,predicted_ratio\n";
    for (std::size_t n : o.sizes) {
        ComplexSequence x(n);
        for (Complex& v : x) v = {dist(rng), dist(rng)};

        Spectrum sink; // keep results alive so the calls cannot be elided
        const double t_naive = median_seconds([&] { sink = dft_naive(x); }, o.reps);
        const double t_fft = median_seconds([&] { sink = fft(x); }, o.reps);
        const double ratio = t_fft > 0.0 ? t_naive / t_fft : 0.0;

        char row[160];
        std::snprintf(row, sizeof(row), "%zu,%.9g,%.9g,%.9g,%.9g\n", n, t_naive,
                      t_fft, ratio, speedup_ratio(static_cast<double>(n)));
        csv += row;
    }
    write_text(o.out, csv);
}

// ---- theory ---------------------------------------------------------------

struct TheoryScaleOpts {
    std::string root = "C";
    std::string kind = "major";
    std::string direction = "asc";
};

void run_theory_scale(const TheoryScaleOpts& o) {
    const std::vector<PitchClass> notes =
        build_scale(pitch_class_arg(o.root), scale_spec(scale_kind_arg(o.kind)),
                    direction_arg(o.direction));
    std::string line;
    for (const PitchClass& pc : notes) {
        if (!line.empty()) line += ' ';
        line += pc.name();
    }
    std::cout << line << "\n";
}

struct TheoryChordOpts {
    std::string root = "C";
    std::string family = "maj";
    int inversion = 0;
};

void run_theory_chord(const TheoryChordOpts& o) {
    VoicedChord chord =
        build_chord(pitch_class_arg(o.root), chord_spec(family_arg(o.family)));
    const int max_inversion = static_cast<int>(chord.notes.size()) - 1;
    if (o.inversion < 0 || o.inversion > max_inversion)
        throw UsageError("inversion must be between 0 and " +
                         std::to_string(max_inversion) + " for this chord");
    for (int i = 0; i < o.inversion; ++i) chord = invert(std::move(chord));
    std::string line;
    for (const Pitch& p : chord.notes) {
        if (!line.empty()) line += ' ';
        line += p.pitch_class.name();
    }
    std::cout << line << "\n";
}

void run_theory_enumerate(bool count_only) {
    const ChordCatalog catalog = enumerate_chords();
    if (count_only) {
        std::cout << catalog.count() << "\n";
        return;
    }
    for (const ChordCatalogEntry& e : catalog.entries)
        std::cout << e.root.name() << ":" << family_name(e.family) << " inversion "
                  << e.inversion_form << "\n";
    std::cout << "total " << catalog.count() << "\n";
}

void add_stft_flags(CLI::App* cmd, AnalysisOpts& o) {
    cmd->add_option("--in", o.in, "input WAV file")->required();
    cmd->add_option("--window", o.window, "analysis window size, power of two")
        ->capture_default_str();
    cmd->add_option("--hop", o.hop, "hop between frames, samples")->capture_default_str();
    cmd->add_option("--window-fn", o.window_fn, "window function: hann or rect")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output path, - for stdout")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral analysis and chord detection toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "render test audio to WAV");
    synth_cmd->require_subcommand(1);

    auto scale_opts = std::make_shared<SynthScaleOpts>();
    auto* synth_scale = synth_cmd->add_subcommand("scale", "one scale, one note after another");
    synth_scale->add_option("--root", scale_opts->root, "root pitch, e.g. C4")
        ->capture_default_str();
    synth_scale->add_option("--kind", scale_opts->kind,
                            "chromatic|major|minor|diminished|augmented")
        ->capture_default_str();
    synth_scale->add_option("--direction", scale_opts->direction, "asc or desc")
        ->capture_default_str();
    synth_scale->add_option("--note-dur", scale_opts->note_dur, "seconds per note")
        ->capture_default_str();
    synth_scale->add_option("--amp", scale_opts->amp, "tone amplitude")->capture_default_str();
    synth_scale->add_option("--rate", scale_opts->rate, "sample rate, Hz")->capture_default_str();
    synth_scale->add_option("--out", scale_opts->out, "output WAV path")->capture_default_str();
    synth_scale->callback([scale_opts] { run_synth_scale(*scale_opts); });

    auto chord_opts = std::make_shared<SynthChordOpts>();
    auto* synth_chord = synth_cmd->add_subcommand("chord", "one sustained chord");
    synth_chord->add_option("--root", chord_opts->root, "root pitch, e.g. C4")
        ->capture_default_str();
    synth_chord->add_option("--family", chord_opts->family,
                            "maj|min|dim|aug|maj7|min7|dom7")
        ->capture_default_str();
    synth_chord->add_option("--inversion", chord_opts->inversion, "inversions to apply")
        ->capture_default_str();
    synth_chord->add_option("--dur", chord_opts->dur, "seconds")->capture_default_str();
    synth_chord->add_option("--amp", chord_opts->amp,
                            "amplitude per tone (default splits 0.9 across tones)");
    synth_chord->add_option("--rate", chord_opts->rate, "sample rate, Hz")->capture_default_str();
    synth_chord->add_option("--out", chord_opts->out, "output WAV path")->capture_default_str();
    synth_chord->callback([chord_opts] { run_synth_chord(*chord_opts); });

    auto tone_opts = std::make_shared<SynthToneOpts>();
    auto* synth_tone = synth_cmd->add_subcommand("tone", "one pure tone");
    synth_tone->add_option("--pitch", tone_opts->pitch, "pitch, e.g. A4")->capture_default_str();
    synth_tone->add_option("--dur", tone_opts->dur, "seconds")->capture_default_str();
    synth_tone->add_option("--amp", tone_opts->amp, "tone amplitude")->capture_default_str();
    synth_tone->add_option("--rate", tone_opts->rate, "sample rate, Hz")->capture_default_str();
    synth_tone->add_option("--out", tone_opts->out, "output WAV path")->capture_default_str();
    synth_tone->callback([tone_opts] { run_synth_tone(*tone_opts); });

    // spectrogram
    auto spect_opts = std::make_shared<AnalysisOpts>();
    auto* spect = app.add_subcommand("spectrogram", "short-time magnitude spectra");
    add_stft_flags(spect, *spect_opts);
    spect->add_option("--format", spect_opts->format, "csv, json or pgm")->capture_default_str();
    spect->callback([spect_opts] { run_spectrogram(*spect_opts); });

    // chromagram
    auto chroma_opts = std::make_shared<AnalysisOpts>();
    auto* chroma = app.add_subcommand("chromagram", "12-bin chroma intensities over time");
    add_stft_flags(chroma, *chroma_opts);
    chroma->add_option("--band-lo", chroma_opts->band_lo, "analysis band low edge, Hz")
        ->capture_default_str();
    chroma->add_option("--band-hi", chroma_opts->band_hi, "analysis band high edge, Hz")
        ->capture_default_str();
    chroma->add_option("--format", chroma_opts->format, "csv, json or pgm")->capture_default_str();
    chroma->callback([chroma_opts] { run_chromagram(*chroma_opts); });

    // chords
    auto chords_opts = std::make_shared<AnalysisOpts>();
    auto* chords = app.add_subcommand("chords", "chord segments as JSON");
    add_stft_flags(chords, *chords_opts);
    chords->add_option("--band-lo", chords_opts->band_lo, "analysis band low edge, Hz")
        ->capture_default_str();
    chords->add_option("--band-hi", chords_opts->band_hi, "analysis band high edge, Hz")
        ->capture_default_str();
    chords->add_option("--median", chords_opts->median, "modal smoothing window, odd")
        ->capture_default_str();
    chords->add_option("--silence-threshold", chords_opts->silence_threshold,
                       "no-chord energy threshold, relative to the track maximum")
        ->capture_default_str();
    chords->callback([chords_opts] { run_chords(*chords_opts); });

    // bench
    auto bench_opts = std::make_shared<BenchOpts>();
    auto* bench = app.add_subcommand("bench", "naive transform vs FFT timings (CSV)");
    bench->add_option("--sizes", bench_opts->sizes, "comma-separated powers of two")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--reps", bench_opts->reps, "repetitions per timing (median)")
        ->capture_default_str();
    bench->add_option("--out", bench_opts->out, "output path, - for stdout")
        ->capture_default_str();
    bench->callback([bench_opts] { run_bench(*bench_opts); });

    // theory
    auto* theory = app.add_subcommand("theory", "scales, chords, and the chord catalog");
    theory->require_subcommand(1);

    auto tscale_opts = std::make_shared<TheoryScaleOpts>();
    auto* tscale = theory->add_subcommand("scale", "print the notes of a scale");
    tscale->add_option("--root", tscale_opts->root, "root pitch class, e.g. C or Eb")
        ->capture_default_str();
    tscale->add_option("--kind", tscale_opts->kind,
                       "chromatic|major|minor|diminished|augmented")
        ->capture_default_str();
    tscale->add_option("--direction", tscale_opts->direction, "asc or desc")
        ->capture_default_str();
    tscale->callback([tscale_opts] { run_theory_scale(*tscale_opts); });

    auto tchord_opts = std::make_shared<TheoryChordOpts>();
    auto* tchord = theory->add_subcommand("chord", "print the notes of a chord voicing");
    tchord->add_option("--root", tchord_opts->root, "root pitch class")->capture_default_str();
    tchord->add_option("--family", tchord_opts->family, "maj|min|dim|aug|maj7|min7|dom7")
        ->capture_default_str();
    tchord->add_option("--inversion", tchord_opts->inversion, "inversions to apply")
        ->capture_default_str();
    tchord->callback([tchord_opts] { run_theory_chord(*tchord_opts); });

    auto count_only = std::make_shared<bool>(false);
    auto* tenum = theory->add_subcommand("enumerate", "list the chord catalog");
    tenum->add_flag("--count-only", *count_only, "print only the number of entries");
    tenum->callback([count_only] { run_theory_enumerate(*count_only); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
