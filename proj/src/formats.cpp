#include "chordscope/formats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace chordscope {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "pgm") return OutputFormat::Pgm;
    throw ParseError("unknown output format '" + name + "', expected csv, json or pgm");
}

TimedMatrix to_matrix(const Spectrogram& spec) {
    TimedMatrix m;
    m.times = spec.frame_times;
    m.rows = spec.frames;
    const std::size_t bins = spec.frames.empty() ? 0 : spec.frames.front().size();
    const double bin_hz = spec.config.sample_rate / static_cast<double>(spec.config.window_size);
    m.column_names.reserve(bins);
    for (std::size_t k = 0; k < bins; ++k)
        m.column_names.push_back("hz_" + format_short(static_cast<double>(k) * bin_hz));
    return m;
}

TimedMatrix to_matrix(const Chromagram& chroma) {
    TimedMatrix m;
    m.times = chroma.frame_times;
    m.rows.reserve(chroma.frames.size());
    for (const ChromaVector& v : chroma.frames)
        m.rows.emplace_back(v.intensity.begin(), v.intensity.end());
    for (int i = 0; i < 12; ++i)
        m.column_names.push_back(PitchClass(i).ascii_name());
    return m;
}

std::string to_csv(const TimedMatrix& m) {
    std::string out = "time_s";
    for (const std::string& name : m.column_names) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        out += format_double(m.times[i]);
        for (double v : m.rows[i]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const TimedMatrix& m) {
    nlohmann::json j;
    j["times"] = m.times;
    j["columns"] = m.column_names;
    j["values"] = m.rows;
    return j.dump() + "\n";
}

std::string to_pgm(const TimedMatrix& m, bool log_compress) {
    const std::size_t width = m.rows.size();
    const std::size_t height = m.rows.empty() ? 0 : m.rows.front().size();

    double peak = 0.0;
    for (const auto& row : m.rows)
        for (double v : row) peak = std::max(peak, v);

    auto shade = [&](double v) -> int {
        if (peak <= 0.0) return 0;
        if (log_compress) {
            constexpr double kFloorDb = -80.0;
            double db = v > 0.0 ? 20.0 * std::log10(v / peak) : kFloorDb;
            db = std::max(db, kFloorDb);
            return static_cast<int>(std::lround((db - kFloorDb) / -kFloorDb * 255.0));
        }
        return static_cast<int>(std::lround(v / peak * 255.0));
    };

    std::string out = "P2\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::string line;
    auto flush = [&] {
        if (!line.empty()) {
            out += line;
            out += '\n';
            line.clear();
        }
    };
    // image rows run top to bottom; matrix column 0 lands on the bottom row
    for (std::size_t r = height; r-- > 0;) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::string tok = std::to_string(shade(m.rows[c][r]));
            if (line.size() + tok.size() + 1 > 70) flush();
            if (!line.empty()) line += ' ';
            line += tok;
        }
        flush();
    }
    return out;
}

std::string segments_to_json(const std::vector<ChordSegment>& segments) {
    nlohmann::json j = nlohmann::json::array();
    for (const ChordSegment& s : segments) {
        nlohmann::json entry;
        entry["start_s"] = s.start_s;
        entry["end_s"] = s.end_s;
        entry["label"] = s.label.name();
        if (s.label.is_chord)
            entry["score"] = s.label.score;
        else
            entry["score"] = nullptr;
        j.push_back(entry);
    }
    return j.dump(2) + "\n";
}

} // namespace chordscope
