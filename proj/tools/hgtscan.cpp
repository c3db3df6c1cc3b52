// hgtscan: detect horizontally transferred DNA from structural window
// sensors combined by a small perceptron classifier.
#include <iostream>

#include <CLI11.hpp>

#include "hgt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"structural-sensor scanner for horizontally transferred DNA"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("hgtscan ") + hgt::cli::kVersion);

    hgt::cli::TrainOptions topt;
    auto* train = app.add_subcommand(
        "train", "train a donor/acceptor window classifier from two FASTA files");
    train->add_option("donor", topt.donor_path, "donor FASTA")->required();
    train->add_option("acceptor", topt.acceptor_path, "acceptor FASTA")->required();
    train->add_option("-o,--model-out", topt.model_out, "model file to write");
    train->add_option("--report-out", topt.report_out, "training report TSV");
    train->add_option("--donor-record", topt.donor_record,
                      "donor record id (default: first record)");
    train->add_option("--acceptor-record", topt.acceptor_record,
                      "acceptor record id (default: first record)");
    train->add_option("--window", topt.window, "fragment/window length (nt)");
    train->add_option("--step", topt.step, "scan step recorded into the model (nt)");
    train->add_option("--hidden", topt.hidden,
                      "hidden layer sizes, e.g. --hidden 5")
        ->delimiter(',');
    train->add_option("--fragments", topt.fragments, "training fragments per genome");
    train->add_option("--lr", topt.learning_rate, "learning rate");
    train->add_option("--momentum", topt.momentum, "momentum in [0,1)");
    train->add_option("--epochs", topt.epochs, "training epochs");
    train->add_option("--seed", topt.seed, "master seed");

    hgt::cli::ScanOptions sopt;
    auto* scan = app.add_subcommand(
        "scan", "slide the trained classifier along a query and call segments");
    scan->add_option("model", sopt.model_path, "model file from train")->required();
    scan->add_option("query", sopt.query_path, "query FASTA")->required();
    scan->add_option("--track-out", sopt.track_out, "per-window track TSV");
    scan->add_option("--segments-out", sopt.segments_out, "called segments TSV");
    scan->add_option("--record", sopt.record, "query record id (default: first)");
    scan->add_option("--window", sopt.window, "override model window length");
    scan->add_option("--step", sopt.step, "override model step");
    scan->add_option("--smooth-k", sopt.smooth_k, "majority-vote width (odd)");
    scan->add_option("--min-seg-windows", sopt.min_segment_windows,
                     "minimum windows per called segment");

    hgt::cli::SimulateOptions mopt;
    auto* simulate = app.add_subcommand(
        "simulate", "insert a random donor fragment into an acceptor sequence");
    simulate->add_option("donor", mopt.donor_path, "donor FASTA")->required();
    simulate->add_option("acceptor", mopt.acceptor_path, "acceptor FASTA")->required();
    simulate->add_option("--chimera-out", mopt.chimera_out, "chimera FASTA to write");
    simulate->add_option("--truth-out", mopt.truth_out, "ground-truth TSV to write");
    simulate->add_option("--donor-record", mopt.donor_record, "donor record id");
    simulate->add_option("--acceptor-record", mopt.acceptor_record,
                         "acceptor record id");
    simulate->add_option("--insert-length", mopt.insert_length,
                         "fragment length (nt)");
    simulate->add_option("--insert-pos", mopt.insert_pos,
                         "insertion coordinate (default: acceptor midpoint)");
    simulate->add_option("--synth-donor", mopt.synth_donor,
                         "replace donor by a fitted-chain synthetic of this length");
    simulate->add_option("--synth-acceptor", mopt.synth_acceptor,
                         "replace acceptor by a fitted-chain synthetic of this length");
    simulate->add_option("--markov-order", mopt.markov_order,
                         "chain order for synthetic sequences");
    simulate->add_option("--seed", mopt.seed, "fragment-sampling seed");

    hgt::cli::SensorsOptions nopt;
    auto* sensors = app.add_subcommand(
        "sensors", "emit raw per-window sensor values as TSV");
    sensors->add_option("input", nopt.input_path, "input FASTA")->required();
    sensors->add_option("-o,--out", nopt.out, "sensor track TSV");
    sensors->add_option("--record", nopt.record, "record id (default: first)");
    sensors->add_option("--window", nopt.window, "window length (nt)");
    sensors->add_option("--step", nopt.step, "window step (nt)");

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) return hgt::cli::run_train(topt, std::cout, std::cerr);
    if (scan->parsed()) return hgt::cli::run_scan(sopt, std::cout, std::cerr);
    if (simulate->parsed()) return hgt::cli::run_simulate(mopt, std::cout, std::cerr);
    if (sensors->parsed()) return hgt::cli::run_sensors(nopt, std::cout, std::cerr);
    return hgt::cli::kExitInput;
}
