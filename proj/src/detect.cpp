#include "chordscope/detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace chordscope {

ChordTemplate make_template(const PitchClass& root, ChordFamily family) {
    ChordTemplate t;
    t.root = PitchClass(root.index());
    t.family = family;
    for (int degree : chord_spec(family).degrees)
        t.mask[static_cast<std::size_t>((root.index() + degree) % 12)] = 1.0;
    const double inv_norm =
        1.0 / std::sqrt(static_cast<double>(chord_spec(family).degrees.size()));
    for (std::size_t i = 0; i < 12; ++i) t.normalized[i] = t.mask[i] * inv_norm;
    return t;
}

const std::vector<ChordTemplate>& standard_templates() {
    static const std::vector<ChordTemplate> templates = [] {
        std::vector<ChordTemplate> out;
        out.reserve(84);
        for (int root = 0; root < 12; ++root)
            for (ChordFamily family : all_chord_families)
                out.push_back(make_template(PitchClass(root), family));
        return out;
    }();
    return templates;
}

std::string ChordLabel::name() const {
    if (!is_chord) return "N";
    return root.ascii_name() + ":" + family_name(family);
}

ChordLabel match_frame(const ChromaVector& chroma,
                       std::span<const ChordTemplate> templates,
                       double silence_threshold) {
    if (templates.empty())
        throw ValidationError("match_frame: template set is empty");
    if (chroma.energy < silence_threshold) return ChordLabel::no_chord();

    double norm_sq = 0.0;
    for (double v : chroma.intensity) norm_sq += v * v;
    if (norm_sq == 0.0) return ChordLabel::no_chord();
    const double inv_norm = 1.0 / std::sqrt(norm_sq);

    const ChordTemplate* best = nullptr;
    double best_score = -2.0;
    for (const ChordTemplate& t : templates) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 12; ++i)
            dot += chroma.intensity[i] * t.normalized[i];
        const double score = dot * inv_norm;
        // strict > keeps the earliest template on ties
        if (score > best_score) {
            best_score = score;
            best = &t;
        }
    }
    return ChordLabel::chord(best->root, best->family, best_score);
}

namespace {

// dense comparable key for counting; -1 is no-chord
int label_key(const ChordLabel& l) {
    if (!l.is_chord) return -1;
    return l.root.index() * 7 + static_cast<int>(l.family);
}

} // namespace

std::vector<ChordLabel> smooth_labels(const std::vector<ChordLabel>& labels,
                                      int median_window) {
    if (median_window < 1 || median_window % 2 == 0)
        throw ValidationError("smooth_labels: window must be odd and >= 1");
    if (median_window == 1 || labels.size() <= 1) return labels;

    const int n = static_cast<int>(labels.size());
    const int half = median_window / 2;
    std::vector<ChordLabel> out;
    out.reserve(labels.size());

    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        std::map<int, int> counts;
        std::map<int, const ChordLabel*> representative;
        for (int j = lo; j <= hi; ++j) {
            const int key = label_key(labels[static_cast<std::size_t>(j)]);
            counts[key] += 1;
            representative.emplace(key, &labels[static_cast<std::size_t>(j)]);
        }
        int best_count = 0;
        bool tied = false;
        int best_key = 0;
        for (const auto& [key, count] : counts) {
            if (count > best_count) {
                best_count = count;
                best_key = key;
                tied = false;
            } else if (count == best_count) {
                tied = true;
            }
        }
        const ChordLabel& own = labels[static_cast<std::size_t>(i)];
        if (tied || best_key == label_key(own))
            out.push_back(own);
        else
            out.push_back(*representative[best_key]);
    }
    return out;
}

std::vector<ChordSegment> label_track(const Chromagram& chromagram,
                                      int median_window, double silence_rel) {
    if (median_window < 1 || median_window % 2 == 0)
        throw ValidationError("label_track: median window must be odd and >= 1");

    std::vector<ChordSegment> segments;
    if (chromagram.frames.empty()) return segments;

    double max_energy = 0.0;
    for (const ChromaVector& c : chromagram.frames)
        max_energy = std::max(max_energy, c.energy);
    const double threshold = silence_rel * max_energy;

    std::vector<ChordLabel> labels;
    labels.reserve(chromagram.frames.size());
    for (const ChromaVector& c : chromagram.frames)
        labels.push_back(match_frame(c, standard_templates(), threshold));
    labels = smooth_labels(labels, median_window);

    // Segments tile the analyzed span: boundaries halfway between frame
    // centers, the first starting at 0. A single frame covers twice its
    // center time (one whole window).
    const std::size_t n = labels.size();
    const auto& times = chromagram.frame_times;
    const double spacing = n >= 2 ? times[1] - times[0] : times[0];
    const double track_end = n >= 2 ? times[n - 1] + spacing / 2.0 : 2.0 * times[0];

    std::size_t run_start = 0;
    double run_score = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (i < n && labels[i] == labels[run_start]) {
            run_score += labels[i].score;
            continue;
        }
        ChordSegment seg;
        seg.label = labels[run_start];
        seg.label.score = run_score / static_cast<double>(i - run_start);
        seg.start_s = run_start == 0
                          ? 0.0
                          : (times[run_start - 1] + times[run_start]) / 2.0;
        seg.end_s = i == n ? track_end : (times[i - 1] + times[i]) / 2.0;
        segments.push_back(seg);
        if (i < n) {
            run_start = i;
            run_score = labels[i].score;
        }
    }
    return segments;
}

} // namespace chordscope
