// Feed-forward sigmoid perceptron with plain backpropagation: halved
// squared error, per-example updates with momentum, seeded shuffling.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgt/errors.hpp"

namespace hgt {

// weights[l][dst][src] connects layer l to layer l+1; sigmoid at every
// non-input layer. A trained model also carries the feature normalization
// frozen at training time and the window geometry it was trained on, so a
// model file is self-contained for scanning.
struct MlpModel {
    std::vector<int> layer_sizes;  // first = inputs, last = 1
    std::vector<std::vector<std::vector<double>>> weights;
    std::vector<std::vector<double>> biases;

    std::vector<double> feature_means;    // identity (all 0) until trained
    std::vector<double> feature_stddevs;  // identity (all 1) until trained
    int window_length = 300;
    int window_step = 30;

    int input_size() const { return layer_sizes.front(); }
};

struct TrainConfig {
    double learning_rate = 0.1;
    double momentum = 0.9;     // in [0, 1)
    int epochs = 500;
    uint64_t seed = 0;
    double init_scale = 0.5;   // init_mlp draws uniform in [-scale, +scale]
    std::optional<double> early_stop_loss;  // stop once epoch mean loss < target
};

struct LabeledExample {
    std::vector<double> features;
    int label = 0;  // 0 = acceptor, 1 = donor
};

// Parameters drawn uniform in [-init_scale, +init_scale]; same seed gives a
// bit-identical model. Throws std::invalid_argument on bad layer sizes.
MlpModel init_mlp(const std::vector<int>& layer_sizes, uint64_t seed,
                  double init_scale = 0.5);

struct ForwardPass {
    std::vector<std::vector<double>> activations;  // [0] = input .. [last] = output
    double output() const { return activations.back().front(); }
};

ForwardPass forward(const MlpModel& model, std::span<const double> features);

// (output - label)^2 / 2
double loss(double output, int label);

struct ParamGrads {
    std::vector<std::vector<std::vector<double>>> weights;
    std::vector<std::vector<double>> biases;
};

// Exact reverse-mode gradients of loss() w.r.t. every weight and bias.
ParamGrads gradients(const MlpModel& model, const LabeledExample& example);

// Per-example gradient descent with momentum; example order reshuffled each
// epoch from config.seed. Returns per-epoch mean loss (length <= epochs when
// early_stop_loss fires). Deterministic given (model, examples, config).
std::vector<double> train(MlpModel& model,
                          const std::vector<LabeledExample>& examples,
                          const TrainConfig& config);

struct Classification {
    double raw = 0.0;  // forward output in (0, 1)
    int label = 0;     // 1 iff raw >= 0.5
};

Classification classify(const MlpModel& model, std::span<const double> features);

// Self-describing text model file; numbers carry 17 significant digits so
// the round-trip is bit-exact. Lines starting with '#' are ignored on read.
void serialize(const MlpModel& model, std::ostream& out);
std::string serialize(const MlpModel& model);
MlpModel deserialize(std::istream& in);  // throws ParseError

}  // namespace hgt
