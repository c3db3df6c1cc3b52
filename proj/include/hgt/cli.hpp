// Batch front end: the train/scan/simulate/sensors commands as library
// functions, so the binary stays a thin flag parser and tests can drive the
// exact code paths users run.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hgt::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;    // unreadable/malformed input, bad config
inline constexpr int kExitRuntime = 3;  // sampling or other runtime failure

struct TrainOptions {
    std::string donor_path;
    std::string acceptor_path;
    std::string model_out = "model.txt";
    std::string report_out = "train_report.tsv";
    std::string donor_record;     // empty = first record
    std::string acceptor_record;  // empty = first record
    int window = 300;
    int step = 30;
    std::vector<int> hidden = {5};
    int fragments = 10000;  // per genome
    double learning_rate = 0.1;
    double momentum = 0.9;
    int epochs = 500;
    uint64_t seed = 1;
};

struct ScanOptions {
    std::string model_path;
    std::string query_path;
    std::string track_out = "track.tsv";
    std::string segments_out = "segments.tsv";
    std::string record;  // empty = first record
    int window = 0;      // 0 = take from model
    int step = 0;        // 0 = take from model
    int smooth_k = 9;
    int min_segment_windows = 10;
};

struct SimulateOptions {
    std::string donor_path;
    std::string acceptor_path;
    std::string chimera_out = "chimera.fasta";
    std::string truth_out = "truth.tsv";
    std::string donor_record;
    std::string acceptor_record;
    long long insert_length = 30000;
    long long insert_pos = -1;  // -1 = acceptor midpoint
    // When > 0, replace the donor/acceptor by synthetic sequences of that
    // length, generated from order-k Markov chains fitted to the inputs.
    long long synth_donor = 0;
    long long synth_acceptor = 0;
    int markov_order = 3;
    uint64_t seed = 1;
};

struct SensorsOptions {
    std::string input_path;
    std::string out = "sensors.tsv";
    std::string record;
    int window = 300;
    int step = 30;
};

// Each command returns an exit code and reports errors on err with the
// failing stage named, e.g. "error [input]: ...".
int run_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);
int run_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_sensors(const SensorsOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace hgt::cli
