#include "hgt/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "hgt/digest.hpp"
#include "hgt/mlp.hpp"
#include "hgt/pipeline.hpp"
#include "hgt/rng.hpp"
#include "hgt/scanner.hpp"
#include "hgt/sensors.hpp"
#include "hgt/sequence.hpp"
#include "hgt/simgen.hpp"

namespace hgt::cli {

namespace {

// The seed stream feeding MLP init/shuffle, kept apart from sampling.
constexpr uint64_t kTrainSeedStream = 100;

int guard(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const ParseError& e) {
        err << "hgtscan: error [input]: " << e.what() << '\n';
        return kExitInput;
    } catch (const SamplingError& e) {
        err << "hgtscan: error [sampling]: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::invalid_argument& e) {
        err << "hgtscan: error [config]: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::domain_error& e) {
        err << "hgtscan: error [config]: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "hgtscan: error [config]: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "hgtscan: error [runtime]: " << e.what() << '\n';
        return kExitRuntime;
    }
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return hex64(fnv1a64(bytes.str()));
}

const NucleotideSequence& pick_record(const std::vector<NucleotideSequence>& records,
                                      const std::string& id,
                                      const std::string& path) {
    if (id.empty()) return records.front();
    for (const auto& r : records) {
        if (r.id == id) return r;
    }
    throw ParseError("record '" + id + "' not found in " + path);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_header(std::ostream& out, const std::string& command,
                  const std::string& config,
                  const std::vector<std::pair<std::string, std::string>>& inputs) {
    out << "# hgtscan " << kVersion << '\n';
    out << "# command: " << command << '\n';
    out << "# config: " << config << '\n';
    for (const auto& [path, digest] : inputs) {
        out << "# input: " << path << " fnv1a64=" << digest << '\n';
    }
}

std::string fmt(double x, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

}  // namespace

int run_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const auto donor_records = load_fasta(opt.donor_path);
        const auto acceptor_records = load_fasta(opt.acceptor_path);
        const auto& donor = pick_record(donor_records, opt.donor_record, opt.donor_path);
        const auto& acceptor =
            pick_record(acceptor_records, opt.acceptor_record, opt.acceptor_path);

        SamplingPlan plan;
        plan.fragments_per_genome = opt.fragments;
        plan.fragment_length = opt.window;
        plan.seed = opt.seed;

        TrainConfig tcfg;
        tcfg.learning_rate = opt.learning_rate;
        tcfg.momentum = opt.momentum;
        tcfg.epochs = opt.epochs;
        tcfg.seed = Rng::derive(opt.seed, kTrainSeedStream);

        std::vector<int> layer_sizes;
        layer_sizes.push_back(SensorVector::kSize);
        for (int h : opt.hidden) layer_sizes.push_back(h);
        layer_sizes.push_back(1);

        const TrainedClassifier tc =
            train_classifier(donor, acceptor, plan, opt.step, layer_sizes, tcfg);

        std::ostringstream config;
        config << "donor=" << opt.donor_path << " acceptor=" << opt.acceptor_path
               << " donor_record=" << donor.id << " acceptor_record=" << acceptor.id
               << " window=" << opt.window << " step=" << opt.step
               << " network=" << tc.report.network
               << " fragments=" << opt.fragments << " lr=" << opt.learning_rate
               << " momentum=" << opt.momentum << " epochs=" << opt.epochs
               << " seed=" << opt.seed;
        const std::vector<std::pair<std::string, std::string>> inputs = {
            {opt.donor_path, digest_file(opt.donor_path)},
            {opt.acceptor_path, digest_file(opt.acceptor_path)},
        };

        {
            auto model_out = open_output(opt.model_out);
            write_header(model_out, "train", config.str(), inputs);
            serialize(tc.model, model_out);
        }
        {
            auto report = open_output(opt.report_out);
            write_header(report, "train", config.str(), inputs);
            report << "# network " << tc.report.network << '\n';
            report << "# holdout_accuracy " << fmt(tc.report.holdout_accuracy, "%.6f")
                   << " (on " << tc.report.n_holdout_per_genome
                   << " fragments per genome)\n";
            report << "epoch\tmean_loss\n";
            for (size_t e = 0; e < tc.report.loss_history.size(); ++e) {
                report << e << '\t' << fmt(tc.report.loss_history[e], "%.10g") << '\n';
            }
        }

        out << "network " << tc.report.network << '\n';
        out << "trained on " << tc.report.n_train_per_genome
            << " fragments per genome (" << donor.id << " vs " << acceptor.id
            << ")\n";
        out << "final mean loss " << fmt(tc.report.loss_history.back(), "%.6g")
            << " after " << tc.report.loss_history.size() << " epochs\n";
        out << "holdout accuracy " << fmt(tc.report.holdout_accuracy, "%.4f")
            << '\n';
        out << "model written to " << opt.model_out << '\n';
        out << "report written to " << opt.report_out << '\n';
    });
}

int run_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        MlpModel model;
        {
            std::ifstream in(opt.model_path, std::ios::binary);
            if (!in) throw ParseError("cannot open model file: " + opt.model_path);
            model = deserialize(in);
        }
        if (opt.window > 0) model.window_length = opt.window;
        if (opt.step > 0) model.window_step = opt.step;

        const auto records = load_fasta(opt.query_path);
        const auto& query = pick_record(records, opt.record, opt.query_path);

        const ScanTrack track = scan(query, model);
        const ScanTrack smoothed = smooth_track(track, opt.smooth_k);
        const auto segments = call_segments(smoothed, opt.min_segment_windows);

        std::ostringstream config;
        config << "model=" << opt.model_path << " query=" << opt.query_path
               << " record=" << query.id << " window=" << model.window_length
               << " step=" << model.window_step << " smooth_k=" << opt.smooth_k
               << " min_seg_windows=" << opt.min_segment_windows
               << " model_id=" << track.model_id;
        const std::vector<std::pair<std::string, std::string>> inputs = {
            {opt.model_path, digest_file(opt.model_path)},
            {opt.query_path, digest_file(opt.query_path)},
        };

        {
            auto track_out = open_output(opt.track_out);
            write_header(track_out, "scan", config.str(), inputs);
            write_track_tsv(track_out, track);  // unsmoothed, plot-ready
        }
        {
            auto seg_out = open_output(opt.segments_out);
            write_header(seg_out, "scan", config.str(), inputs);
            write_segments_tsv(seg_out, segments);
        }

        out << "scanned " << track.points.size() << " windows of " << query.id
            << '\n';
        out << "called " << segments.size() << " segment(s)\n";
        out << "track written to " << opt.track_out << '\n';
        out << "segments written to " << opt.segments_out << '\n';
    });
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const auto donor_records = load_fasta(opt.donor_path);
        const auto acceptor_records = load_fasta(opt.acceptor_path);
        NucleotideSequence donor =
            pick_record(donor_records, opt.donor_record, opt.donor_path);
        NucleotideSequence acceptor =
            pick_record(acceptor_records, opt.acceptor_record, opt.acceptor_path);

        if (opt.insert_length < 1) {
            throw std::invalid_argument("--insert-length must be >= 1");
        }
        // Optional desk-scale stand-ins: fit chains to the inputs and
        // regenerate sequences of the requested lengths.
        if (opt.synth_donor > 0) {
            donor = generate(fit_markov(donor, opt.markov_order),
                             static_cast<size_t>(opt.synth_donor),
                             Rng::derive(opt.seed, 11), donor.id + "_sim");
        }
        if (opt.synth_acceptor > 0) {
            acceptor = generate(fit_markov(acceptor, opt.markov_order),
                                static_cast<size_t>(opt.synth_acceptor),
                                Rng::derive(opt.seed, 12), acceptor.id + "_sim");
        }
        std::optional<size_t> pos;
        if (opt.insert_pos >= 0) pos = static_cast<size_t>(opt.insert_pos);

        const ExperimentBundle bundle = make_experiment(
            donor, acceptor, static_cast<size_t>(opt.insert_length), pos, opt.seed);

        std::ostringstream config;
        config << "donor=" << opt.donor_path << " acceptor=" << opt.acceptor_path
               << " donor_record=" << donor.id << " acceptor_record=" << acceptor.id
               << " insert_length=" << bundle.record.insert_length
               << " insert_pos=" << bundle.record.insert_position
               << " donor_fragment_start=" << bundle.donor_fragment_start
               << " synth_donor=" << opt.synth_donor
               << " synth_acceptor=" << opt.synth_acceptor
               << " markov_order=" << opt.markov_order << " seed=" << opt.seed;
        const std::vector<std::pair<std::string, std::string>> inputs = {
            {opt.donor_path, digest_file(opt.donor_path)},
            {opt.acceptor_path, digest_file(opt.acceptor_path)},
        };

        {
            // FASTA admits no comment lines; the echo rides the description.
            auto fasta = open_output(opt.chimera_out);
            NucleotideSequence described = bundle.chimera;
            described.id += " hgtscan=" + std::string(kVersion) + " " + config.str();
            write_fasta(fasta, described);
        }
        {
            auto truth = open_output(opt.truth_out);
            write_header(truth, "simulate", config.str(), inputs);
            write_truth_tsv(truth, bundle.record);
        }

        out << "chimera " << bundle.chimera.id << " length "
            << bundle.chimera.length() << '\n';
        out << "fragment of " << bundle.record.insert_length << " nt from "
            << donor.id << " (start " << bundle.donor_fragment_start
            << ") inserted at " << bundle.record.insert_position << '\n';
        out << "chimera written to " << opt.chimera_out << '\n';
        out << "truth written to " << opt.truth_out << '\n';
    });
}

int run_sensors(const SensorsOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        const auto records = load_fasta(opt.input_path);
        const auto& seq = pick_record(records, opt.record, opt.input_path);

        const WindowSpec spec{opt.window, opt.step};
        const auto points = rolling_scan(seq, spec);

        std::ostringstream config;
        config << "input=" << opt.input_path << " record=" << seq.id
               << " window=" << opt.window << " step=" << opt.step;

        auto tsv = open_output(opt.out);
        write_header(tsv, "sensors", config.str(),
                     {{opt.input_path, digest_file(opt.input_path)}});
        tsv << "start\tgc\tcpg\td_yr\td_ws\td_mk\tf_h\tf_i\tf_v\n";
        for (const auto& p : points) {
            tsv << p.start;
            if (p.sensors) {
                for (double x : p.sensors->as_array()) tsv << '\t' << fmt(x);
            } else {
                for (int i = 0; i < SensorVector::kSize; ++i) tsv << "\tNA";
            }
            tsv << '\n';
        }

        out << "wrote " << points.size() << " sensor rows to " << opt.out << '\n';
    });
}

}  // namespace hgt::cli
