#include "hgt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgt/rng.hpp"

namespace hgt {

namespace {

// Seed streams hanging off plan.seed. Donor and acceptor sampling must stay
// independent of each other and of the held-out draw.
constexpr uint64_t kDonorStream = 1;
constexpr uint64_t kAcceptorStream = 2;
constexpr uint64_t kHoldoutStream = 3;

constexpr double kStddevFloor = 1e-8;

std::vector<LabeledExample> sensors_at(const NucleotideSequence& seq,
                                       const std::vector<size_t>& starts,
                                       int fragment_length, int label) {
    std::vector<LabeledExample> out;
    out.reserve(starts.size());
    for (size_t s : starts) {
        const SensorVector v =
            sensor_vector(window_at(seq, s, static_cast<size_t>(fragment_length)));
        const auto arr = v.as_array();
        out.push_back({{arr.begin(), arr.end()}, label});
    }
    return out;
}

double holdout_accuracy(const MlpModel& model, const NormalizationParams& norm,
                        const std::vector<LabeledExample>& examples) {
    int correct = 0;
    for (const auto& ex : examples) {
        const auto z = apply_normalization(norm, ex.features);
        if (classify(model, z).label == ex.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

}  // namespace

std::vector<size_t> sample_fragments(const NucleotideSequence& seq,
                                     const SamplingPlan& plan) {
    if (plan.fragment_length < 2) {
        throw std::invalid_argument("fragment_length must be >= 2");
    }
    if (plan.fragments_per_genome < 1) {
        throw std::invalid_argument("fragments_per_genome must be >= 1");
    }
    const size_t frag = static_cast<size_t>(plan.fragment_length);
    if (seq.length() < frag) {
        throw std::domain_error("sequence '" + seq.id + "' (length " +
                                std::to_string(seq.length()) +
                                ") shorter than fragment length " +
                                std::to_string(frag));
    }

    const uint64_t n_starts = seq.length() - frag + 1;
    const int64_t budget = plan.attempt_budget();
    Rng rng(plan.seed);

    std::vector<size_t> starts;
    starts.reserve(static_cast<size_t>(plan.fragments_per_genome));
    int64_t attempts = 0;
    while (starts.size() < static_cast<size_t>(plan.fragments_per_genome)) {
        if (attempts >= budget) {
            throw SamplingError("resample budget of " + std::to_string(budget) +
                                " exhausted on sequence '" + seq.id +
                                "' (too few clean windows)");
        }
        ++attempts;
        const size_t start = static_cast<size_t>(rng.below(n_starts));
        if (is_clean(window_at(seq, start, frag))) {
            starts.push_back(start);
        }
    }
    return starts;
}

TrainingSet build_training_set(const NucleotideSequence& donor,
                               const NucleotideSequence& acceptor,
                               const SamplingPlan& plan) {
    SamplingPlan donor_plan = plan;
    donor_plan.seed = Rng::derive(plan.seed, kDonorStream);
    SamplingPlan acceptor_plan = plan;
    acceptor_plan.seed = Rng::derive(plan.seed, kAcceptorStream);

    TrainingSet ts;
    ts.donor_id = donor.id;
    ts.acceptor_id = acceptor.id;
    ts.plan = plan;
    ts.donor_starts = sample_fragments(donor, donor_plan);
    ts.acceptor_starts = sample_fragments(acceptor, acceptor_plan);

    ts.examples = sensors_at(donor, ts.donor_starts, plan.fragment_length, 1);
    auto acceptor_examples =
        sensors_at(acceptor, ts.acceptor_starts, plan.fragment_length, 0);
    ts.examples.insert(ts.examples.end(),
                       std::make_move_iterator(acceptor_examples.begin()),
                       std::make_move_iterator(acceptor_examples.end()));
    return ts;
}

NormalizationParams fit_normalization(const std::vector<LabeledExample>& examples) {
    if (examples.empty()) {
        throw std::invalid_argument("cannot fit normalization on empty set");
    }
    const size_t dim = examples.front().features.size();
    const double n = static_cast<double>(examples.size());

    NormalizationParams p;
    p.means.assign(dim, 0.0);
    p.stddevs.assign(dim, 0.0);
    for (const auto& ex : examples) {
        if (ex.features.size() != dim) {
            throw std::invalid_argument("inconsistent feature dimensions");
        }
        for (size_t i = 0; i < dim; ++i) p.means[i] += ex.features[i];
    }
    for (size_t i = 0; i < dim; ++i) p.means[i] /= n;
    for (const auto& ex : examples) {
        for (size_t i = 0; i < dim; ++i) {
            const double r = ex.features[i] - p.means[i];
            p.stddevs[i] += r * r;
        }
    }
    for (size_t i = 0; i < dim; ++i) {
        p.stddevs[i] = std::max(std::sqrt(p.stddevs[i] / n), kStddevFloor);
    }
    return p;
}

std::vector<double> apply_normalization(const NormalizationParams& params,
                                        std::span<const double> features) {
    if (features.size() != params.means.size()) {
        throw std::invalid_argument("feature dimension does not match params");
    }
    std::vector<double> z(features.size());
    for (size_t i = 0; i < z.size(); ++i) {
        z[i] = (features[i] - params.means[i]) / params.stddevs[i];
    }
    return z;
}

TrainedClassifier train_classifier(const NucleotideSequence& donor,
                                   const NucleotideSequence& acceptor,
                                   const SamplingPlan& plan, int scan_step,
                                   const std::vector<int>& layer_sizes,
                                   const TrainConfig& config) {
    if (layer_sizes.empty() || layer_sizes.front() != SensorVector::kSize) {
        throw std::invalid_argument("input layer must match the " +
                                    std::to_string(SensorVector::kSize) +
                                    " sensors");
    }
    WindowSpec{plan.fragment_length, scan_step}.validate();

    TrainingSet ts = build_training_set(donor, acceptor, plan);
    const NormalizationParams norm = fit_normalization(ts.examples);

    std::vector<LabeledExample> normalized;
    normalized.reserve(ts.examples.size());
    for (const auto& ex : ts.examples) {
        normalized.push_back({apply_normalization(norm, ex.features), ex.label});
    }

    TrainedClassifier tc;
    tc.model = init_mlp(layer_sizes, config.seed, config.init_scale);
    tc.report.loss_history = train(tc.model, normalized, config);
    tc.report.network = network_tag(layer_sizes);
    tc.report.n_train_per_genome = plan.fragments_per_genome;

    tc.model.feature_means = norm.means;
    tc.model.feature_stddevs = norm.stddevs;
    tc.model.window_length = plan.fragment_length;
    tc.model.window_step = scan_step;

    SamplingPlan eval_plan = plan;
    eval_plan.fragments_per_genome = std::max(1, plan.fragments_per_genome / 10);
    eval_plan.seed = Rng::derive(plan.seed, kHoldoutStream);
    const TrainingSet holdout = build_training_set(donor, acceptor, eval_plan);
    tc.report.n_holdout_per_genome = eval_plan.fragments_per_genome;
    tc.report.holdout_accuracy = holdout_accuracy(tc.model, norm, holdout.examples);
    return tc;
}

std::string network_tag(const std::vector<int>& layer_sizes) {
    std::string tag;
    for (size_t i = 0; i < layer_sizes.size(); ++i) {
        if (i) tag += '-';
        tag += std::to_string(layer_sizes[i]);
    }
    return tag;
}

}  // namespace hgt
