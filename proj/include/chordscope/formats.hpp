#pragma once

#include <string>
#include <vector>

#include "chordscope/chroma.hpp"
#include "chordscope/common.hpp"
#include "chordscope/detect.hpp"
#include "chordscope/stft.hpp"

namespace chordscope {

enum class OutputFormat { Csv, Json, Pgm };

OutputFormat parse_output_format(const std::string& name);

/// A time-indexed feature matrix: one row of values per frame.
struct TimedMatrix {
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> column_names;
};

TimedMatrix to_matrix(const Spectrogram& spec);
TimedMatrix to_matrix(const Chromagram& chroma);

/// CSV with header `time_s,<column...>`; doubles at full precision.
std::string to_csv(const TimedMatrix& m);

/// JSON object {"times": [...], "columns": [...], "values": [[...], ...]}.
std::string to_json(const TimedMatrix& m);

/// Plain-text PGM (P2) heatmap: one image column per frame, first matrix
/// column at the bottom. With log_compress, values are mapped to dB below
/// the matrix maximum, floored at -80 dB; otherwise scaled linearly.
std::string to_pgm(const TimedMatrix& m, bool log_compress);

/// JSON array of {start_s, end_s, label, score}; score is null for "N".
std::string segments_to_json(const std::vector<ChordSegment>& segments);

} // namespace chordscope
