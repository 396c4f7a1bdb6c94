#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chordscope/chroma.hpp"

using namespace chordscope;

namespace {

std::vector<double> mix(const std::vector<double>& freqs, double seconds,
                        double rate) {
    std::vector<double> out(static_cast<std::size_t>(seconds * rate), 0.0);
    const double amp = 1.0 / static_cast<double>(freqs.size());
    for (double f : freqs)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += amp * std::sin(2.0 * std::numbers::pi * f *
                                     static_cast<double>(i) / rate);
    return out;
}

Chromagram analyze(const std::vector<double>& signal) {
    StftConfig config; // 4096/1024 hann @ 11025
    return chromagram(stft(signal, config));
}

std::size_t argmax(const ChromaVector& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 12; ++i)
        if (v.intensity[i] > v.intensity[best]) best = i;
    return best;
}

double norm(const ChromaVector& v) {
    double sq = 0.0;
    for (double x : v.intensity) sq += x * x;
    return std::sqrt(sq);
}

} // namespace

TEST_CASE("a pure tone folds onto its pitch class") {
    const Chromagram c = analyze(mix({440.0}, 1.0, 11025.0));
    REQUIRE(!c.frames.empty());
    for (const ChromaVector& frame : c.frames) {
        CHECK(argmax(frame) == 9); // A
        CHECK(frame.intensity[9] > 0.95);
        CHECK(norm(frame) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(frame.energy > 0.0);
    }
}

TEST_CASE("chroma is octave invariant") {
    for (double freq : {220.0, 440.0, 880.0, 1760.0}) {
        const Chromagram c = analyze(mix({freq}, 1.0, 11025.0));
        for (const ChromaVector& frame : c.frames) CHECK(argmax(frame) == 9);
    }
}

TEST_CASE("chord tones share the chroma mass") {
    // C4, E4, G4 at equal amplitude
    const Chromagram c =
        analyze(mix({261.6255653005986, 329.6275569128699, 391.99543598374942},
                    1.0, 11025.0));
    const double balanced = 1.0 / std::sqrt(3.0);
    for (const ChromaVector& frame : c.frames) {
        for (std::size_t pc : {0u, 4u, 7u}) // C, E, G
            CHECK(frame.intensity[pc] == doctest::Approx(balanced).epsilon(0.15));
        for (std::size_t pc : {1u, 2u, 3u, 5u, 6u, 8u, 9u, 10u, 11u})
            CHECK(frame.intensity[pc] < 0.1);
    }
}

TEST_CASE("transposition rotates the dominant classes") {
    // D4, F#4, A4: the C major pattern two semitones up
    const Chromagram c = analyze(
        mix({293.6647679174076, 369.99442271163446, 440.0}, 1.0, 11025.0));
    for (const ChromaVector& frame : c.frames) {
        double in = 0.0, total = 0.0;
        for (std::size_t pc = 0; pc < 12; ++pc) {
            total += frame.intensity[pc] * frame.intensity[pc];
            if (pc == 2 || pc == 6 || pc == 9)
                in += frame.intensity[pc] * frame.intensity[pc];
        }
        CHECK(in / total > 0.95);
    }
}

TEST_CASE("fold_to_chroma maps single bins by nearest pitch") {
    const FrequencyAxis axis = frequency_axis(4096, 1.0 / 11025.0);

    std::vector<double> frame(2049, 0.0);
    frame[163] = 2.0; // 163 * 11025/4096 = 438.8 Hz, nearest pitch A4
    const ChromaVector chroma = fold_to_chroma(frame, axis, {});
    CHECK(chroma.intensity[9] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t pc : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 10u, 11u})
        CHECK(chroma.intensity[pc] == 0.0);
    CHECK(chroma.energy == doctest::Approx(4.0).epsilon(1e-12)); // magnitude squared

    // bins outside the band contribute nothing
    std::vector<double> low(2049, 0.0);
    low[11] = 5.0; // 29.6 Hz, below the 55 Hz default band edge
    const ChromaVector empty = fold_to_chroma(low, axis, {});
    CHECK(norm(empty) == 0.0);
    CHECK(empty.energy == 0.0);

    // a narrower band cuts the A4 bin off as well
    const ChromaVector cut = fold_to_chroma(frame, axis, {55.0, 400.0});
    CHECK(norm(cut) == 0.0);
}

TEST_CASE("all-zero frames stay all-zero") {
    const FrequencyAxis axis = frequency_axis(4096, 1.0 / 11025.0);
    const ChromaVector chroma = fold_to_chroma(std::vector<double>(2049, 0.0), axis, {});
    CHECK(norm(chroma) == 0.0);
    CHECK(chroma.energy == 0.0);

    const Chromagram c = analyze(std::vector<double>(11025, 0.0));
    for (const ChromaVector& frame : c.frames) {
        CHECK(norm(frame) == 0.0);
        CHECK(frame.energy == 0.0);
    }
}

TEST_CASE("chroma frames are unit length or zero") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> dist(0.0, 3.0);
    const FrequencyAxis axis = frequency_axis(4096, 1.0 / 11025.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> frame(2049);
        for (double& v : frame) v = dist(rng);
        const ChromaVector chroma = fold_to_chroma(frame, axis, {});
        CHECK(norm(chroma) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("band validation") {
    const FrequencyAxis axis = frequency_axis(4096, 1.0 / 11025.0);
    const std::vector<double> frame(2049, 1.0);
    CHECK_THROWS_AS(fold_to_chroma(frame, axis, {0.0, 2000.0}), ValidationError);
    CHECK_THROWS_AS(fold_to_chroma(frame, axis, {-5.0, 2000.0}), ValidationError);
    CHECK_THROWS_AS(fold_to_chroma(frame, axis, {300.0, 300.0}), ValidationError);
    CHECK_THROWS_AS(fold_to_chroma(frame, axis, {500.0, 200.0}), ValidationError);
    CHECK_THROWS_AS(fold_to_chroma(frame, axis, {55.0, 6000.0}), ValidationError);
    CHECK_NOTHROW(fold_to_chroma(frame, axis, {55.0, 5512.5}));
}

TEST_CASE("chromagram keeps the frame times of its source") {
    const std::vector<double> signal = mix({440.0}, 1.0, 11025.0);
    StftConfig config;
    const Spectrogram s = stft(signal, config);
    const Chromagram c = chromagram(s);
    CHECK(c.frame_times == s.frame_times);
    CHECK(c.frames.size() == s.frames.size());
}
