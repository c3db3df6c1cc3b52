#include <doctest.h>

#include <sstream>

#include "hgt/rng.hpp"
#include "hgt/sequence.hpp"

using namespace hgt;

namespace {

std::vector<NucleotideSequence> parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_fasta(in);
}

}  // namespace

TEST_CASE("parse_fasta: minimal record") {
    const auto recs = parse_str(">s1\nacgt\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].id == "s1");
    CHECK(recs[0].residues == "ACGT");
    CHECK(recs[0].length() == 4);
}

TEST_CASE("parse_fasta: multiple records and ambiguity normalization") {
    const auto recs = parse_str(">a\nAC\nGT\n>b\nNNNN\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].id == "a");
    CHECK(recs[0].residues == "ACGT");
    CHECK(recs[1].id == "b");
    CHECK(recs[1].residues == "NNNN");
    CHECK_FALSE(is_clean(recs[1].residues));
}

TEST_CASE("parse_fasta: empty input is an error") {
    CHECK_THROWS_AS(parse_str(""), ParseError);
    CHECK_THROWS_AS(parse_str("\n\n"), ParseError);
}

TEST_CASE("parse_fasta: sequence before header is malformed") {
    CHECK_THROWS_AS(parse_str("ACGT\n>s\nACGT\n"), ParseError);
}

TEST_CASE("parse_fasta: CRLF endings and id truncation at whitespace") {
    const auto recs = parse_str(">chr1 some description here\r\nAC\r\nGT\r\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].id == "chr1");
    CHECK(recs[0].residues == "ACGT");
}

TEST_CASE("parse_fasta: every IUPAC ambiguity code collapses to the marker") {
    const auto recs = parse_str(">x\nRYWSKMBDHVNrywskmbdhvn\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].residues == std::string(22, 'N'));
}

TEST_CASE("parse_fasta: empty record and lowercase mixing") {
    const auto recs = parse_str(">empty\n>full\naCgTn\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].residues.empty());
    CHECK(recs[0].length() == 0);
    CHECK(recs[1].residues == "ACGTN");
}

TEST_CASE("window_at: slices and bounds") {
    NucleotideSequence seq{"s", "ACGTACGT"};
    CHECK(window_at(seq, 2, 4) == "GTAC");

    NucleotideSequence four{"s", "ACGT"};
    CHECK(window_at(four, 0, 4) == "ACGT");
    CHECK_THROWS_AS(window_at(four, 2, 4), std::out_of_range);
    CHECK_THROWS_AS(window_at(four, 5, 0), std::out_of_range);
    CHECK(window_at(four, 4, 0).empty());  // empty view at the end is fine
}

TEST_CASE("is_clean") {
    CHECK(is_clean("ACGT"));
    CHECK_FALSE(is_clean("ACNT"));
    CHECK(is_clean(""));  // vacuous
}

TEST_CASE("WindowSpec validation") {
    CHECK_NOTHROW((WindowSpec{300, 30}).validate());
    CHECK_NOTHROW((WindowSpec{2, 2}).validate());
    CHECK_THROWS_AS((WindowSpec{1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((WindowSpec{300, 0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((WindowSpec{300, 301}).validate(), std::invalid_argument);
}

TEST_CASE("property: parse/write round-trip preserves residues") {
    Rng rng(20240501);
    const char alphabet[] = "ACGTacgtnNRYWSkm";
    for (int iter = 0; iter < 50; ++iter) {
        std::string fasta;
        const int n_records = 1 + static_cast<int>(rng.below(4));
        std::vector<std::string> ids;
        for (int r = 0; r < n_records; ++r) {
            ids.push_back("rec" + std::to_string(iter) + "_" + std::to_string(r));
            fasta += ">" + ids.back() + "\n";
            const size_t len = rng.below(501);
            const size_t width = 1 + rng.below(90);
            std::string run;
            for (size_t i = 0; i < len; ++i) {
                run += alphabet[rng.below(sizeof(alphabet) - 1)];
                if (run.size() == width) {
                    fasta += run + "\n";
                    run.clear();
                }
            }
            if (!run.empty()) fasta += run + "\n";
        }
        const auto first = parse_str(fasta);

        std::ostringstream rewritten;
        for (const auto& rec : first) {
            write_fasta(rewritten, rec, 1 + rng.below(100));
        }
        const auto second = parse_str(rewritten.str());

        REQUIRE(second.size() == first.size());
        for (size_t r = 0; r < first.size(); ++r) {
            CHECK(second[r].id == first[r].id);
            CHECK(second[r].residues == first[r].residues);
        }
    }
}

TEST_CASE("property: tiling windows reconstruct the sequence") {
    Rng rng(77);
    for (int iter = 0; iter < 30; ++iter) {
        NucleotideSequence seq{"t", ""};
        const size_t len = 1 + rng.below(2000);
        for (size_t i = 0; i < len; ++i) {
            seq.residues += "ACGTN"[rng.below(5)];
        }
        std::string rebuilt;
        size_t pos = 0;
        while (pos < seq.length()) {
            const size_t piece = 1 + rng.below(seq.length() - pos);
            rebuilt += window_at(seq, pos, piece);
            pos += piece;
        }
        CHECK(rebuilt == seq.residues);
    }
}
