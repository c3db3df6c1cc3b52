#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "hgt/rng.hpp"
#include "hgt/simgen.hpp"

using namespace hgt;

namespace {

size_t context_of(const std::string& kmer) {
    size_t ctx = 0;
    for (char c : kmer) ctx = (ctx << 2) | static_cast<size_t>(base_index(c));
    return ctx;
}

}  // namespace

TEST_CASE("fit_markov: order-0 add-one smoothing, hand counts") {
    const MarkovModel m = fit_markov({"s", "GGGGCCCC"}, 0);
    REQUIRE(m.transitions.size() == 1);
    CHECK(m.transitions[0][0] == 1.0 / 12.0);  // A
    CHECK(m.transitions[0][1] == 5.0 / 12.0);  // C
    CHECK(m.transitions[0][2] == 5.0 / 12.0);  // G
    CHECK(m.transitions[0][3] == 1.0 / 12.0);  // T
    CHECK(m.initial == std::vector<double>{1.0});

    const MarkovModel a = fit_markov({"s", "AAAA"}, 0);
    CHECK(a.transitions[0][0] == 5.0 / 8.0);
    CHECK(a.transitions[0][1] == 1.0 / 8.0);
    CHECK(a.transitions[0][2] == 1.0 / 8.0);
    CHECK(a.transitions[0][3] == 1.0 / 8.0);
}

TEST_CASE("fit_markov: contexts touching invalid symbols are skipped") {
    // Order 1 on AANAA: usable transitions are A->A (twice).
    const MarkovModel m = fit_markov({"s", "AANAA"}, 1);
    const size_t a = context_of("A");
    CHECK(m.transitions[a][0] == 3.0 / 6.0);
    CHECK(m.transitions[a][1] == 1.0 / 6.0);
    // Initial distribution counts clean 1-mers only: four A's.
    CHECK(m.initial[a] == 1.0);

    CHECK_THROWS_AS(fit_markov({"s", "NNNN"}, 1), std::domain_error);
    CHECK_THROWS_AS(fit_markov({"s", "A"}, 1), std::domain_error);
    CHECK_THROWS_AS(fit_markov({"s", "ACGT"}, -1), std::invalid_argument);
}

TEST_CASE("fit_markov: probability vectors sum to 1") {
    Rng rng(61);
    for (int order = 0; order <= 3; ++order) {
        std::string r;
        for (int i = 0; i < 4000; ++i) r += "ACGT"[rng.below(4)];
        const MarkovModel m = fit_markov({"s", r}, order);
        REQUIRE(m.transitions.size() == (size_t{1} << (2 * order)));
        for (const auto& row : m.transitions) {
            const double sum = row[0] + row[1] + row[2] + row[3];
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            for (double p : row) CHECK(p >= 0.0);
        }
        double init_sum = 0.0;
        for (double p : m.initial) init_sum += p;
        CHECK(std::abs(init_sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("fit_markov: top transition matches the modal successor") {
    Rng rng(62);
    // Biased composition so modal successors are unambiguous.
    std::string r;
    for (int i = 0; i < 20000; ++i) {
        r += (rng.below(10) < 7) ? 'G' : "ACT"[rng.below(3)];
    }
    const NucleotideSequence seq{"s", r};
    for (int order : {0, 1, 2}) {
        const MarkovModel m = fit_markov(seq, order);
        const size_t k = static_cast<size_t>(order);
        // Recount modal successors directly.
        std::map<size_t, std::array<int, 4>> counts;
        for (size_t i = 0; i + k < seq.length(); ++i) {
            counts[context_of(seq.residues.substr(i, k))]
                  [base_index(seq.residues[i + k])]++;
        }
        for (const auto& [ctx, c] : counts) {
            int modal = 0;
            double top = -1.0;
            int fitted = 0;
            for (int b = 0; b < 4; ++b) {
                if (c[b] > c[modal]) modal = b;
                if (m.transitions[ctx][b] > top) {
                    top = m.transitions[ctx][b];
                    fitted = b;
                }
            }
            // Smoothing never reorders counts.
            CHECK(c[fitted] == c[modal]);
        }
    }
}

TEST_CASE("generate: determinism, alphabet, degenerate lengths") {
    const MarkovModel m = fit_markov({"s", "ACGTACGGTACCGTA"}, 2);
    const auto a = generate(m, 5000, 99, "g");
    const auto b = generate(m, 5000, 99, "g");
    CHECK(a.residues == b.residues);
    CHECK(a.id == "g");
    CHECK(a.length() == 5000);
    CHECK(is_clean(a.residues));

    const auto c = generate(m, 5000, 100);
    CHECK(c.residues != a.residues);

    CHECK(generate(m, 0, 1).length() == 0);
    CHECK(generate(m, 1, 1).length() == 1);  // below the order: truncated seed k-mer
}

TEST_CASE("generate: order-0 empirical GC concentrates on the model") {
    MarkovModel m;
    m.order = 0;
    m.transitions = {{0.15, 0.35, 0.35, 0.15}};  // GC = 0.7
    m.initial = {1.0};
    const auto seq = generate(m, 100000, 4242);
    double gc = 0;
    for (char c : seq.residues) gc += (c == 'G' || c == 'C') ? 1 : 0;
    gc /= static_cast<double>(seq.length());
    CHECK(gc >= 0.69);
    CHECK(gc <= 0.71);
}

TEST_CASE("generate: long-run k-mer distribution converges to the model") {
    // Chi-square of observed successor counts against model probabilities,
    // conditioned on observed context counts. Order 2: df = 16 * 3 = 48.
    Rng rng(63);
    std::string r;
    for (int i = 0; i < 30000; ++i) r += "ACGT"[rng.below(4)];
    const MarkovModel m = fit_markov({"s", r}, 2);

    const auto seq = generate(m, 1000000, 7);
    std::vector<std::array<int64_t, 4>> counts(16, {0, 0, 0, 0});
    size_t ctx = context_of(seq.residues.substr(0, 2));
    for (size_t i = 2; i < seq.length(); ++i) {
        const int b = base_index(seq.residues[i]);
        counts[ctx][b]++;
        ctx = ((ctx << 2) | static_cast<size_t>(b)) & 15;
    }

    double chi2 = 0.0;
    int df = 0;
    for (size_t c = 0; c < 16; ++c) {
        const double total = static_cast<double>(counts[c][0] + counts[c][1] +
                                                 counts[c][2] + counts[c][3]);
        if (total < 20) continue;
        for (int b = 0; b < 4; ++b) {
            const double expect = total * m.transitions[c][b];
            const double diff = static_cast<double>(counts[c][b]) - expect;
            chi2 += diff * diff / expect;
        }
        df += 3;
    }
    // Wilson-Hilferty 0.999 quantile approximation.
    const double z = 3.090232306167814;
    const double t = 2.0 / (9.0 * df);
    const double q999 = df * std::pow(1.0 - t + z * std::sqrt(t), 3.0);
    CHECK(chi2 < q999);
}

TEST_CASE("insert_fragment: boundaries and slice arithmetic") {
    const NucleotideSequence acceptor{"acc", "AAAACCCC"};
    const std::string frag = "GGTT";

    const auto at0 = insert_fragment(acceptor, "don", frag, 0);
    CHECK(at0.chimera.residues == "GGTTAAAACCCC");

    const auto at_end = insert_fragment(acceptor, "don", frag, 8);
    CHECK(at_end.chimera.residues == "AAAACCCCGGTT");

    const auto mid = insert_fragment(acceptor, "don", frag, 3);
    CHECK(mid.chimera.residues == "AAAGGTTACCCC");
    CHECK(mid.chimera.length() == acceptor.length() + frag.size());
    CHECK(mid.chimera.residues.substr(3, 4) == frag);
    // Acceptor content outside the insert is untouched.
    CHECK(mid.chimera.residues.substr(0, 3) == acceptor.residues.substr(0, 3));
    CHECK(mid.chimera.residues.substr(7) == acceptor.residues.substr(3));

    CHECK(mid.record.acceptor_id == "acc");
    CHECK(mid.record.donor_id == "don");
    CHECK(mid.record.insert_position == 3);
    CHECK(mid.record.insert_length == 4);

    CHECK_THROWS_AS(insert_fragment(acceptor, "don", frag, 9), std::out_of_range);
}

TEST_CASE("make_experiment: midpoint default, clean fragment, determinism") {
    Rng rng(64);
    std::string d, a;
    for (int i = 0; i < 5000; ++i) d += "ACGT"[rng.below(4)];
    for (int i = 0; i < 8001; ++i) a += "ACGT"[rng.below(4)];
    d[2] = 'N';  // a sprinkle of invalid symbols to dodge
    d[777] = 'N';
    const NucleotideSequence donor{"don", d};
    const NucleotideSequence acceptor{"acc", a};

    const auto bundle = make_experiment(donor, acceptor, 500, std::nullopt, 5);
    CHECK(bundle.record.insert_position == 4000);  // floor(8001 / 2)
    CHECK(bundle.record.insert_length == 500);
    CHECK(bundle.chimera.length() == 8501);
    CHECK(is_clean(window_at(donor, bundle.donor_fragment_start, 500)));
    CHECK(bundle.chimera.residues.substr(4000, 500) ==
          donor.residues.substr(bundle.donor_fragment_start, 500));

    const auto again = make_experiment(donor, acceptor, 500, std::nullopt, 5);
    CHECK(again.donor_fragment_start == bundle.donor_fragment_start);
    CHECK(again.chimera.residues == bundle.chimera.residues);

    const auto at_pos = make_experiment(donor, acceptor, 500, size_t{100}, 5);
    CHECK(at_pos.record.insert_position == 100);

    const NucleotideSequence dirty{"n", std::string(2000, 'N')};
    CHECK_THROWS_AS(make_experiment(dirty, acceptor, 500, std::nullopt, 1),
                    SamplingError);
    CHECK_THROWS_AS(make_experiment(donor, acceptor, 6000, std::nullopt, 1),
                    std::invalid_argument);
}

TEST_CASE("truth record: TSV round-trip") {
    const InsertionRecord rec{"acc_1", "don_2", 123456, 30000};
    std::stringstream buf;
    buf << "# hgtscan test echo\n";
    write_truth_tsv(buf, rec);

    const InsertionRecord back = read_truth_tsv(buf);
    CHECK(back.acceptor_id == rec.acceptor_id);
    CHECK(back.donor_id == rec.donor_id);
    CHECK(back.insert_position == rec.insert_position);
    CHECK(back.insert_length == rec.insert_length);

    std::istringstream empty("");
    CHECK_THROWS_AS(read_truth_tsv(empty), ParseError);
    std::istringstream bad_header("a\tb\tc\td\n1\t2\t3\t4\n");
    CHECK_THROWS_AS(read_truth_tsv(bad_header), ParseError);
}
