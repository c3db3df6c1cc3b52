#include "hgt/scanner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hgt/digest.hpp"
#include "hgt/pipeline.hpp"
#include "hgt/sensors.hpp"

namespace hgt {

ScanTrack scan(const NucleotideSequence& seq, const MlpModel& model) {
    const WindowSpec spec{model.window_length, model.window_step};
    const NormalizationParams norm{model.feature_means, model.feature_stddevs};

    ScanTrack track;
    track.spec = spec;
    track.sequence_id = seq.id;
    track.model_id = hex64(fnv1a64(serialize(model)));

    const auto points = rolling_scan(seq, spec);
    track.points.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        TrackPoint tp;
        tp.index = i;
        tp.start = points[i].start;
        tp.end = tp.start + static_cast<size_t>(spec.length);
        if (points[i].sensors) {
            const auto features = points[i].sensors->as_array();
            const auto z = apply_normalization(norm, features);
            const Classification c = classify(model, z);
            tp.raw = c.raw;
            tp.label = c.label == 1 ? Call::Donor : Call::Acceptor;
        } else {
            tp.raw = std::numeric_limits<double>::quiet_NaN();
            tp.label = Call::None;
        }
        track.points.push_back(tp);
    }
    return track;
}

ScanTrack smooth_track(const ScanTrack& track, int k) {
    if (k < 1 || k % 2 == 0) {
        throw std::invalid_argument("smoothing width must be odd and >= 1");
    }
    ScanTrack out = track;
    const auto& pts = track.points;
    const int n = static_cast<int>(pts.size());
    const int half = k / 2;
    for (int i = 0; i < n; ++i) {
        if (pts[i].label == Call::None) continue;
        int ones = 0, zeros = 0;
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        for (int j = lo; j <= hi; ++j) {
            if (pts[j].label == Call::Donor) ++ones;
            else if (pts[j].label == Call::Acceptor) ++zeros;
        }
        if (ones > zeros) out.points[i].label = Call::Donor;
        else if (zeros > ones) out.points[i].label = Call::Acceptor;
        // tie: keep the original label
    }
    return out;
}

std::vector<Segment> call_segments(const ScanTrack& track,
                                   int min_segment_windows) {
    if (min_segment_windows < 1) {
        throw std::invalid_argument("min_segment_windows must be >= 1");
    }
    std::vector<Segment> segments;
    const auto& pts = track.points;

    size_t run_begin = 0;
    size_t run_len = 0;
    double raw_sum = 0.0;
    auto flush = [&]() {
        if (run_len >= static_cast<size_t>(min_segment_windows)) {
            Segment seg;
            seg.start_nt = pts[run_begin].start;
            seg.end_nt = pts[run_begin + run_len - 1].end;
            seg.n_windows = run_len;
            seg.mean_raw = raw_sum / static_cast<double>(run_len);
            segments.push_back(seg);
        }
        run_len = 0;
        raw_sum = 0.0;
    };

    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].label == Call::Donor) {
            if (run_len == 0) run_begin = i;
            ++run_len;
            raw_sum += pts[i].raw;
        } else {
            flush();
        }
    }
    flush();
    return segments;
}

void write_track_tsv(std::ostream& out, const ScanTrack& track) {
    out << "index\tstart\tend\traw\tlabel\n";
    char buf[32];
    for (const auto& p : track.points) {
        out << p.index << '\t' << p.start << '\t' << p.end << '\t';
        if (p.label == Call::None) {
            out << "NA\tNA\n";
        } else {
            std::snprintf(buf, sizeof(buf), "%.6f", p.raw);
            out << buf << '\t' << (p.label == Call::Donor ? 1 : 0) << '\n';
        }
    }
}

void write_segments_tsv(std::ostream& out, const std::vector<Segment>& segments) {
    out << "start_nt\tend_nt\tn_windows\tmean_raw\n";
    char buf[32];
    for (const auto& s : segments) {
        std::snprintf(buf, sizeof(buf), "%.6f", s.mean_raw);
        out << s.start_nt << '\t' << s.end_nt << '\t' << s.n_windows << '\t'
            << buf << '\n';
    }
}

}  // namespace hgt
