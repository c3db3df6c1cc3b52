#include "hgt/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hgt/rng.hpp"

namespace hgt {

namespace {

// Clamped so the output stays strictly inside (0, 1) even when the affine
// input saturates in double precision.
double sigmoid(double z) {
    const double s = 1.0 / (1.0 + std::exp(-z));
    if (s <= 0.0) return std::numeric_limits<double>::min();
    if (s >= 1.0) return std::nextafter(1.0, 0.0);
    return s;
}

void validate_layer_sizes(const std::vector<int>& sizes) {
    if (sizes.size() < 2) {
        throw std::invalid_argument("layer_sizes needs at least input and output");
    }
    for (int n : sizes) {
        if (n < 1) {
            throw std::invalid_argument("layer size must be >= 1, got " +
                                        std::to_string(n));
        }
    }
    if (sizes.back() != 1) {
        throw std::invalid_argument("output layer must have exactly 1 unit");
    }
}

void check_input_dim(const MlpModel& model, size_t dim) {
    if (dim != static_cast<size_t>(model.input_size())) {
        throw std::invalid_argument("feature dimension " + std::to_string(dim) +
                                    " does not match input layer " +
                                    std::to_string(model.input_size()));
    }
}

ParamGrads zero_like(const MlpModel& model) {
    ParamGrads g;
    g.weights.resize(model.weights.size());
    g.biases.resize(model.biases.size());
    for (size_t l = 0; l < model.weights.size(); ++l) {
        g.weights[l].assign(model.weights[l].size(),
                            std::vector<double>(model.weights[l][0].size(), 0.0));
        g.biases[l].assign(model.biases[l].size(), 0.0);
    }
    return g;
}

// Backprop into a caller-provided gradient structure; returns the output.
double backprop_into(const MlpModel& model, const LabeledExample& example,
                     ParamGrads& g) {
    const ForwardPass fp = forward(model, example.features);
    const size_t n_layers = model.weights.size();

    // Output delta for halved squared error through the sigmoid.
    std::vector<double> delta(1);
    const double out = fp.output();
    delta[0] = (out - static_cast<double>(example.label)) * out * (1.0 - out);

    for (size_t l = n_layers; l-- > 0;) {
        const auto& src = fp.activations[l];
        for (size_t dst = 0; dst < delta.size(); ++dst) {
            g.biases[l][dst] = delta[dst];
            for (size_t s = 0; s < src.size(); ++s) {
                g.weights[l][dst][s] = delta[dst] * src[s];
            }
        }
        if (l == 0) break;
        std::vector<double> prev(src.size());
        for (size_t s = 0; s < src.size(); ++s) {
            double sum = 0.0;
            for (size_t dst = 0; dst < delta.size(); ++dst) {
                sum += model.weights[l][dst][s] * delta[dst];
            }
            prev[s] = sum * src[s] * (1.0 - src[s]);
        }
        delta = std::move(prev);
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

MlpModel init_mlp(const std::vector<int>& layer_sizes, uint64_t seed,
                  double init_scale) {
    validate_layer_sizes(layer_sizes);
    if (init_scale < 0.0) {
        throw std::invalid_argument("init_scale must be >= 0");
    }

    MlpModel model;
    model.layer_sizes = layer_sizes;
    model.feature_means.assign(layer_sizes.front(), 0.0);
    model.feature_stddevs.assign(layer_sizes.front(), 1.0);

    Rng rng(seed);
    for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int n_src = layer_sizes[l];
        const int n_dst = layer_sizes[l + 1];
        std::vector<std::vector<double>> w(n_dst, std::vector<double>(n_src));
        for (auto& row : w) {
            for (double& x : row) x = rng.uniform(-init_scale, init_scale);
        }
        std::vector<double> b(n_dst);
        for (double& x : b) x = rng.uniform(-init_scale, init_scale);
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::move(b));
    }
    return model;
}

ForwardPass forward(const MlpModel& model, std::span<const double> features) {
    check_input_dim(model, features.size());

    ForwardPass fp;
    fp.activations.reserve(model.layer_sizes.size());
    fp.activations.emplace_back(features.begin(), features.end());

    for (size_t l = 0; l < model.weights.size(); ++l) {
        const auto& src = fp.activations.back();
        std::vector<double> dst(model.biases[l].size());
        for (size_t u = 0; u < dst.size(); ++u) {
            double z = model.biases[l][u];
            const auto& row = model.weights[l][u];
            for (size_t s = 0; s < src.size(); ++s) z += row[s] * src[s];
            dst[u] = sigmoid(z);
        }
        fp.activations.push_back(std::move(dst));
    }
    return fp;
}

double loss(double output, int label) {
    const double r = output - static_cast<double>(label);
    return 0.5 * r * r;
}

ParamGrads gradients(const MlpModel& model, const LabeledExample& example) {
    ParamGrads g = zero_like(model);
    backprop_into(model, example, g);
    return g;
}

std::vector<double> train(MlpModel& model,
                          const std::vector<LabeledExample>& examples,
                          const TrainConfig& config) {
    if (examples.empty()) {
        throw std::invalid_argument("training set is empty");
    }
    if (config.learning_rate <= 0.0) {
        throw std::invalid_argument("learning_rate must be > 0");
    }
    if (config.momentum < 0.0 || config.momentum >= 1.0) {
        throw std::invalid_argument("momentum must be in [0, 1)");
    }
    if (config.epochs < 1) {
        throw std::invalid_argument("epochs must be >= 1");
    }
    bool seen[2] = {false, false};
    for (const auto& ex : examples) {
        if (ex.label != 0 && ex.label != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
        check_input_dim(model, ex.features.size());
        seen[ex.label] = true;
    }
    if (!seen[0] || !seen[1]) {
        std::cerr << "warning: training set contains only label "
                  << (seen[0] ? 0 : 1) << "\n";
    }

    ParamGrads grads = zero_like(model);
    ParamGrads velocity = zero_like(model);
    Rng rng(config.seed);

    std::vector<size_t> order(examples.size());
    std::iota(order.begin(), order.end(), size_t{0});

    std::vector<double> history;
    history.reserve(config.epochs);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        for (size_t idx : order) {
            const auto& ex = examples[idx];
            const double out = backprop_into(model, ex, grads);
            loss_sum += loss(out, ex.label);

            for (size_t l = 0; l < model.weights.size(); ++l) {
                for (size_t u = 0; u < model.weights[l].size(); ++u) {
                    for (size_t s = 0; s < model.weights[l][u].size(); ++s) {
                        double& v = velocity.weights[l][u][s];
                        v = config.momentum * v -
                            config.learning_rate * grads.weights[l][u][s];
                        model.weights[l][u][s] += v;
                    }
                    double& vb = velocity.biases[l][u];
                    vb = config.momentum * vb -
                         config.learning_rate * grads.biases[l][u];
                    model.biases[l][u] += vb;
                }
            }
        }
        history.push_back(loss_sum / static_cast<double>(examples.size()));
        if (config.early_stop_loss && history.back() < *config.early_stop_loss) {
            break;
        }
    }
    return history;
}

Classification classify(const MlpModel& model, std::span<const double> features) {
    const double raw = forward(model, features).output();
    return {raw, raw >= 0.5 ? 1 : 0};
}

void serialize(const MlpModel& model, std::ostream& out) {
    out << "hgt_mlp 1\n";
    out << "layer_sizes";
    for (int n : model.layer_sizes) out << ' ' << n;
    out << '\n';
    out << "window " << model.window_length << ' ' << model.window_step << '\n';
    out << "sensor_order gc,cpg,d_yr,d_ws,d_mk,f_h,f_i,f_v\n";
    out << "feature_means";
    for (double x : model.feature_means) out << ' ' << format_double(x);
    out << '\n';
    out << "feature_stddevs";
    for (double x : model.feature_stddevs) out << ' ' << format_double(x);
    out << '\n';
    for (size_t l = 0; l < model.weights.size(); ++l) {
        out << "layer " << l << '\n';
        for (const auto& row : model.weights[l]) {
            out << 'w';
            for (double x : row) out << ' ' << format_double(x);
            out << '\n';
        }
        out << 'b';
        for (double x : model.biases[l]) out << ' ' << format_double(x);
        out << '\n';
    }
    out << "end\n";
}

std::string serialize(const MlpModel& model) {
    std::ostringstream os;
    serialize(model, os);
    return os.str();
}

namespace {

// Skips blank lines and '#' comments.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

std::vector<double> parse_doubles(std::istringstream& is, size_t expect,
                                  const std::string& what) {
    std::vector<double> v;
    double x;
    while (is >> x) v.push_back(x);
    if (v.size() != expect) {
        throw ParseError("model file: " + what + " expects " +
                         std::to_string(expect) + " numbers, got " +
                         std::to_string(v.size()));
    }
    return v;
}

}  // namespace

MlpModel deserialize(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) {
        throw ParseError("model file: empty input");
    }
    {
        std::istringstream is(line);
        std::string magic;
        int version = 0;
        is >> magic >> version;
        if (magic != "hgt_mlp" || version != 1) {
            throw ParseError("model file: expected 'hgt_mlp 1' header");
        }
    }

    MlpModel model;
    bool have_sizes = false, have_window = false, have_order = false;
    bool have_means = false, have_stddevs = false;

    // Metadata block, any order, until the first layer.
    while (true) {
        if (!next_content_line(in, line)) {
            throw ParseError("model file: truncated before layer blocks");
        }
        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key == "layer") break;

        if (key == "layer_sizes") {
            int n;
            while (is >> n) model.layer_sizes.push_back(n);
            if (model.layer_sizes.size() < 2) {
                throw ParseError("model file: layer_sizes needs >= 2 entries");
            }
            for (int sz : model.layer_sizes) {
                if (sz < 1) throw ParseError("model file: layer size < 1");
            }
            have_sizes = true;
        } else if (key == "window") {
            if (!(is >> model.window_length >> model.window_step)) {
                throw ParseError("model file: window expects length and step");
            }
            have_window = true;
        } else if (key == "sensor_order") {
            have_order = true;
        } else if (key == "feature_means") {
            if (!have_sizes) throw ParseError("model file: feature_means before layer_sizes");
            model.feature_means = parse_doubles(
                is, static_cast<size_t>(model.layer_sizes.front()), "feature_means");
            have_means = true;
        } else if (key == "feature_stddevs") {
            if (!have_sizes) throw ParseError("model file: feature_stddevs before layer_sizes");
            model.feature_stddevs = parse_doubles(
                is, static_cast<size_t>(model.layer_sizes.front()), "feature_stddevs");
            have_stddevs = true;
        } else {
            throw ParseError("model file: unknown field '" + key + "'");
        }
    }

    if (!have_sizes) throw ParseError("model file: missing layer_sizes");
    if (!have_window) throw ParseError("model file: missing window");
    if (!have_order) throw ParseError("model file: missing sensor_order");
    if (!have_means || !have_stddevs) {
        throw ParseError("model file: missing normalization block");
    }

    // Layer blocks; `line` currently holds "layer <l>".
    const size_t n_layers = model.layer_sizes.size() - 1;
    for (size_t l = 0; l < n_layers; ++l) {
        {
            std::istringstream is(line);
            std::string key;
            size_t idx = n_layers;
            is >> key >> idx;
            if (key != "layer" || idx != l) {
                throw ParseError("model file: expected 'layer " +
                                 std::to_string(l) + "'");
            }
        }
        const size_t n_src = static_cast<size_t>(model.layer_sizes[l]);
        const size_t n_dst = static_cast<size_t>(model.layer_sizes[l + 1]);
        std::vector<std::vector<double>> w;
        for (size_t r = 0; r < n_dst; ++r) {
            if (!next_content_line(in, line)) {
                throw ParseError("model file: truncated weight rows");
            }
            std::istringstream is(line);
            std::string key;
            is >> key;
            if (key != "w") throw ParseError("model file: expected weight row");
            w.push_back(parse_doubles(is, n_src, "weight row"));
        }
        if (!next_content_line(in, line)) {
            throw ParseError("model file: truncated bias row");
        }
        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key != "b") throw ParseError("model file: expected bias row");
        model.weights.push_back(std::move(w));
        model.biases.push_back(parse_doubles(is, n_dst, "bias row"));

        if (!next_content_line(in, line)) {
            throw ParseError("model file: truncated after layer " +
                             std::to_string(l));
        }
    }
    if (line != "end") {
        throw ParseError("model file: expected 'end'");
    }

    if (model.layer_sizes.back() != 1) {
        throw ParseError("model file: output layer must have 1 unit");
    }
    if (model.window_length < 2 || model.window_step < 1 ||
        model.window_step > model.window_length) {
        throw ParseError("model file: invalid window geometry");
    }
    return model;
}

}  // namespace hgt
