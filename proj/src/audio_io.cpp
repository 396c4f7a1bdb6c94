#include "chordscope/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace chordscope {

namespace {

constexpr double kFadeSeconds = 0.01;
constexpr double kScale16 = 32768.0;

double event_end(const SynthEvent& e) { return e.start + e.duration; }

} // namespace

void SynthSpec::validate() const {
    if (sample_rate <= 0.0)
        throw ValidationError("synth spec: sample rate must be positive");
    for (const SynthEvent& e : events) {
        if (e.duration <= 0.0)
            throw ValidationError("synth spec: event duration must be positive");
        if (e.start < 0.0)
            throw ValidationError("synth spec: event start must be >= 0");
        if (e.amplitude < 0.0)
            throw ValidationError("synth spec: event amplitude must be >= 0");
    }

    // peak possible amplitude = sum of per-tone amplitudes over events
    // active at once; sweep the event boundaries
    std::vector<std::pair<double, double>> edges;
    for (const SynthEvent& e : events) {
        const double amp = e.amplitude * static_cast<double>(e.pitches.size());
        edges.emplace_back(e.start, amp);
        edges.emplace_back(event_end(e), -amp);
    }
    std::sort(edges.begin(), edges.end());
    // Edges within a nanosecond of each other count as simultaneous, so a
    // release is netted against the onset it abuts: back-to-back notes whose
    // boundary times disagree only by rounding are sequential, not stacked.
    double level = 0.0;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j].first - edges[i].first <= 1e-9)
            level += edges[j++].second;
        if (level > 1.0 + 1e-9)
            throw ValidationError(
                "synth spec: simultaneous amplitudes sum to " +
                std::to_string(level) + " at t=" +
                std::to_string(edges[i].first) + " s, must stay <= 1");
        i = j;
    }
}

AudioBuffer synth(const SynthSpec& spec) {
    spec.validate();

    double end_time = 0.0;
    for (const SynthEvent& e : spec.events)
        end_time = std::max(end_time, event_end(e));

    AudioBuffer buffer;
    buffer.sample_rate = spec.sample_rate;
    buffer.samples.assign(
        static_cast<std::size_t>(std::llround(end_time * spec.sample_rate)), 0.0);

    for (const SynthEvent& e : spec.events) {
        const double end = event_end(e);
        const double fade = std::min(kFadeSeconds, e.duration / 2.0);
        const auto first = static_cast<std::size_t>(
            std::max(0.0, std::ceil(e.start * spec.sample_rate - 1e-9)));
        std::vector<double> freqs;
        freqs.reserve(e.pitches.size());
        for (const Pitch& p : e.pitches) freqs.push_back(pitch_to_frequency(p));

        for (std::size_t k = first; k < buffer.samples.size(); ++k) {
            const double t = static_cast<double>(k) / spec.sample_rate;
            if (t >= end) break;
            const double envelope =
                std::max(0.0, std::min({1.0, (t - e.start) / fade, (end - t) / fade}));
            if (envelope == 0.0) continue;
            double value = 0.0;
            for (double f : freqs)
                value += std::sin(2.0 * std::numbers::pi * f * t + e.phase);
            buffer.samples[k] += e.amplitude * envelope * value;
        }
    }
    return buffer;
}

namespace {

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) |
           (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::int16_t read_s16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::int16_t>(read_u16(b, at));
}

bool id_is(std::span<const std::uint8_t> b, std::size_t at, const char* id) {
    return std::memcmp(b.data() + at, id, 4) == 0;
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void append_id(std::vector<std::uint8_t>& out, const char* id) {
    out.insert(out.end(), id, id + 4);
}

} // namespace

AudioBuffer read_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12)
        throw ParseError("RIFF header truncated: file has " +
                         std::to_string(bytes.size()) + " bytes, need 12");
    if (!id_is(bytes, 0, "RIFF"))
        throw ParseError("bad container id, expected 'RIFF'");
    if (!id_is(bytes, 8, "WAVE"))
        throw ParseError("RIFF form type is not 'WAVE'");

    bool have_fmt = false;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;

    AudioBuffer out;
    bool have_data = false;

    std::size_t at = 12;
    while (at < bytes.size()) {
        if (bytes.size() - at < 8)
            throw ParseError("truncated chunk header at offset " + std::to_string(at));
        const char id[5] = {static_cast<char>(bytes[at]), static_cast<char>(bytes[at + 1]),
                            static_cast<char>(bytes[at + 2]), static_cast<char>(bytes[at + 3]),
                            '\0'};
        const std::uint32_t size = read_u32(bytes, at + 4);
        at += 8;
        if (bytes.size() - at < size)
            throw ParseError(std::string("chunk '") + id + "' truncated: declares " +
                             std::to_string(size) + " bytes, " +
                             std::to_string(bytes.size() - at) + " available");

        if (id_is(bytes, at - 8, "fmt ")) {
            if (size < 16) throw ParseError("fmt chunk too small: " + std::to_string(size) + " bytes");
            const std::uint16_t format_tag = read_u16(bytes, at);
            if (format_tag != 1)
                throw ParseError("unsupported fmt format tag " +
                                 std::to_string(format_tag) + ", only PCM (1)");
            channels = read_u16(bytes, at + 2);
            if (channels != 1 && channels != 2)
                throw ParseError("unsupported channel count " + std::to_string(channels) +
                                 ", only mono or stereo");
            sample_rate = read_u32(bytes, at + 4);
            if (sample_rate == 0) throw ParseError("fmt sample rate is zero");
            const std::uint16_t bits = read_u16(bytes, at + 14);
            if (bits != 16)
                throw ParseError("unsupported bits per sample " + std::to_string(bits) +
                                 ", only 16-bit PCM");
            have_fmt = true;
        } else if (id_is(bytes, at - 8, "data")) {
            if (!have_fmt) throw ParseError("data chunk appears before fmt chunk");
            const std::size_t frame_bytes = 2u * channels;
            if (size % frame_bytes != 0)
                throw ParseError("data chunk size " + std::to_string(size) +
                                 " is not a multiple of the frame size " +
                                 std::to_string(frame_bytes));
            const std::size_t frames = size / frame_bytes;
            out.samples.resize(frames);
            for (std::size_t i = 0; i < frames; ++i) {
                if (channels == 1) {
                    out.samples[i] = read_s16(bytes, at + 2 * i) / kScale16;
                } else {
                    const double l = read_s16(bytes, at + 4 * i);
                    const double r = read_s16(bytes, at + 4 * i + 2);
                    out.samples[i] = (l + r) / 2.0 / kScale16;
                }
            }
            have_data = true;
        }
        // unknown chunks are skipped; chunks pad to even sizes
        at += size + (size % 2);
    }

    if (!have_fmt) throw ParseError("missing fmt chunk");
    if (!have_data) throw ParseError("missing data chunk");
    out.sample_rate = static_cast<double>(sample_rate);
    return out;
}

std::vector<std::uint8_t> write_wav(const AudioBuffer& buffer) {
    if (buffer.sample_rate <= 0.0)
        throw ValidationError("write_wav: sample rate must be positive");
    const auto rate = static_cast<std::uint32_t>(std::llround(buffer.sample_rate));
    const auto data_size = static_cast<std::uint32_t>(buffer.samples.size() * 2);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    append_id(out, "RIFF");
    append_u32(out, 36 + data_size);
    append_id(out, "WAVE");
    append_id(out, "fmt ");
    append_u32(out, 16);
    append_u16(out, 1); // PCM
    append_u16(out, 1); // mono
    append_u32(out, rate);
    append_u32(out, rate * 2); // byte rate
    append_u16(out, 2);        // block align
    append_u16(out, 16);       // bits per sample
    append_id(out, "data");
    append_u32(out, data_size);

    for (double s : buffer.samples) {
        auto q = static_cast<long>(std::lrint(s * kScale16));
        q = std::clamp(q, -32768L, 32767L);
        append_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    return out;
}

AudioBuffer read_wav_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_wav(bytes);
}

void write_wav_file(const std::string& path, const AudioBuffer& buffer) {
    const std::vector<std::uint8_t> bytes = write_wav(buffer);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ParseError("failed writing '" + path + "'");
}

} // namespace chordscope
