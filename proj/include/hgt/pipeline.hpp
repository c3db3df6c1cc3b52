// Training-stage orchestration: random fragment sampling from donor and
// acceptor, sensor evaluation, z-score normalization, MLP fitting.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgt/mlp.hpp"
#include "hgt/sensors.hpp"
#include "hgt/sequence.hpp"

namespace hgt {

struct SamplingPlan {
    int fragments_per_genome = 10000;
    int fragment_length = 300;
    uint64_t seed = 0;
    // 0 means the default budget of 1000 draws per requested fragment.
    int64_t max_resample_attempts = 0;

    int64_t attempt_budget() const {
        return max_resample_attempts > 0
                   ? max_resample_attempts
                   : 1000LL * static_cast<int64_t>(fragments_per_genome);
    }
};

// Start positions drawn uniformly with replacement from the valid range;
// draws landing on windows with invalid symbols are rejected and redrawn.
// Throws std::domain_error if the sequence is shorter than one fragment and
// SamplingError once the attempt budget is exhausted.
std::vector<size_t> sample_fragments(const NucleotideSequence& seq,
                                     const SamplingPlan& plan);

struct TrainingSet {
    std::vector<LabeledExample> examples;  // donor block (label 1) first
    std::vector<size_t> donor_starts;
    std::vector<size_t> acceptor_starts;
    std::string donor_id;
    std::string acceptor_id;
    SamplingPlan plan;
};

// Raw sensor vectors; donor fragments labeled 1, acceptor fragments 0.
TrainingSet build_training_set(const NucleotideSequence& donor,
                               const NucleotideSequence& acceptor,
                               const SamplingPlan& plan);

struct NormalizationParams {
    std::vector<double> means;
    std::vector<double> stddevs;  // population stddev, floored at 1e-8
};

NormalizationParams fit_normalization(const std::vector<LabeledExample>& examples);

std::vector<double> apply_normalization(const NormalizationParams& params,
                                        std::span<const double> features);

struct TrainReport {
    std::vector<double> loss_history;   // per-epoch mean loss
    double holdout_accuracy = 0.0;      // on an independently sampled set
    int n_train_per_genome = 0;
    int n_holdout_per_genome = 0;
    std::string network;                // e.g. "8-5-1"
};

struct TrainedClassifier {
    MlpModel model;  // carries NormalizationParams and window geometry
    TrainReport report;
};

// Samples, normalizes and trains; the held-out evaluation set (10% of the
// plan per genome, at least 1) is drawn from an independent seed stream.
TrainedClassifier train_classifier(const NucleotideSequence& donor,
                                   const NucleotideSequence& acceptor,
                                   const SamplingPlan& plan, int scan_step,
                                   const std::vector<int>& layer_sizes,
                                   const TrainConfig& config);

// "8-5-1" style tag for a layer-size list.
std::string network_tag(const std::vector<int>& layer_sizes);

}  // namespace hgt
