// Prediction stage: slide a window along a sequence, classify each window,
// smooth the label track and call contiguous donor segments.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgt/mlp.hpp"
#include "hgt/sequence.hpp"

namespace hgt {

enum class Call : int8_t {
    Acceptor = 0,
    Donor = 1,
    None = -1,  // window contained invalid symbols
};

struct TrackPoint {
    size_t index = 0;       // window ordinal; start = index * step
    size_t start = 0;       // nucleotide coordinates, 0-based
    size_t end = 0;         // exclusive
    double raw = 0.0;       // NaN when label is None
    Call label = Call::None;
};

struct ScanTrack {
    std::vector<TrackPoint> points;
    WindowSpec spec;
    std::string model_id;     // digest of the serialized model
    std::string sequence_id;
};

// Window geometry and normalization come from the model. Throws
// std::domain_error when the sequence is shorter than one window.
ScanTrack scan(const NucleotideSequence& seq, const MlpModel& model);

// Majority vote over the k-point centered neighborhood (truncated at track
// ends). No-call points neither vote nor change; ties keep the original
// label; raw values are untouched. k must be odd, k = 1 is the identity.
ScanTrack smooth_track(const ScanTrack& track, int k);

struct Segment {
    size_t start_nt = 0;   // first window start
    size_t end_nt = 0;     // last window end (over-covers by up to length-step)
    size_t n_windows = 0;
    double mean_raw = 0.0;
};

// Maximal runs of consecutive donor-labeled points (no-calls break runs)
// with at least min_segment_windows windows.
std::vector<Segment> call_segments(const ScanTrack& track,
                                   int min_segment_windows);

// Plot-ready TSV: index, start, end, raw (6 decimals, NA for no-call),
// label (0/1/NA).
void write_track_tsv(std::ostream& out, const ScanTrack& track);

// start_nt, end_nt, n_windows, mean_raw.
void write_segments_tsv(std::ostream& out, const std::vector<Segment>& segments);

}  // namespace hgt
