#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chordscope/common.hpp"
#include "chordscope/theory.hpp"

namespace chordscope {

/// Mono audio, samples in [-1, 1].
struct AudioBuffer {
    std::vector<double> samples;
    double sample_rate = 11025.0;

    double duration() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

/// One synthesis event: a set of simultaneous pure tones. Each tone is
/// A * sin(2pi f t + phi) with f taken from its pitch.
struct SynthEvent {
    double start = 0.0;    // seconds
    double duration = 0.0; // seconds, > 0
    std::vector<Pitch> pitches;
    double amplitude = 1.0; // per tone
    double phase = 0.0;     // radians
};

/// A synthesis plan. Amplitudes of simultaneously sounding tones must sum
/// to at most 1 so the output cannot clip.
struct SynthSpec {
    std::vector<SynthEvent> events;
    double sample_rate = 11025.0;

    void validate() const;
};

/// Render a spec to audio. Every event gets a 10 ms linear fade-in and
/// fade-out to keep note edges from splattering across the spectrum.
AudioBuffer synth(const SynthSpec& spec);

/// Parse a RIFF/WAVE container holding 16-bit PCM, mono or stereo. Samples
/// are scaled by 1/32768; stereo frames are averaged to mono. Unknown
/// chunks are skipped. Malformed input raises ParseError naming the field.
AudioBuffer read_wav(std::span<const std::uint8_t> bytes);

/// Serialize to 16-bit PCM mono RIFF/WAVE. read_wav(write_wav(b)) matches
/// b to within one quantization step per sample.
std::vector<std::uint8_t> write_wav(const AudioBuffer& buffer);

AudioBuffer read_wav_file(const std::string& path);
void write_wav_file(const std::string& path, const AudioBuffer& buffer);

} // namespace chordscope
