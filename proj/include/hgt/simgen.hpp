// Synthetic sequence generation: fitted Markov chains, in-silico fragment
// insertion, and ground-truth experiment bundles.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgt/sequence.hpp"

namespace hgt {

// Order-k chain over {A,C,G,T}: one probability vector per k-mer context
// (contexts indexed base-4, first symbol most significant) plus the initial
// k-mer distribution. For order 0 the initial distribution is the trivial
// single entry.
struct MarkovModel {
    int order = 0;
    std::vector<std::array<double, 4>> transitions;  // 4^order rows
    std::vector<double> initial;                     // 4^order entries

    size_t context_count() const { return transitions.size(); }
};

// Transition probabilities from observed (context -> next) counts with
// add-one smoothing; contexts touching invalid symbols are skipped. Initial
// distribution from observed clean k-mer frequencies. Throws
// std::domain_error when no clean (order+1)-mer exists.
MarkovModel fit_markov(const NucleotideSequence& seq, int order);

// Deterministic per seed; emits only A/C/G/T. When length < order the
// initial k-mer is truncated.
NucleotideSequence generate(const MarkovModel& model, size_t length,
                            uint64_t seed, std::string id = "sim");

struct InsertionRecord {
    std::string acceptor_id;
    std::string donor_id;
    size_t insert_position = 0;  // nucleotide coordinate in the acceptor
    size_t insert_length = 0;
};

struct Insertion {
    NucleotideSequence chimera;
    InsertionRecord record;
};

// chimera = acceptor[0, position) + fragment + acceptor[position, end).
// position may equal acceptor.length(); beyond that is a bounds error.
Insertion insert_fragment(const NucleotideSequence& acceptor,
                          const std::string& donor_id,
                          std::string_view fragment, size_t position);

struct ExperimentBundle {
    NucleotideSequence chimera;
    InsertionRecord record;
    size_t donor_fragment_start = 0;  // where in the donor the fragment came from
};

// Picks a random clean donor fragment of insert_length and inserts it at
// position (default: acceptor midpoint). Throws SamplingError when no clean
// fragment can be drawn.
ExperimentBundle make_experiment(const NucleotideSequence& donor,
                                 const NucleotideSequence& acceptor,
                                 size_t insert_length,
                                 std::optional<size_t> position, uint64_t seed);

// Truth record TSV: acceptor_id, donor_id, insert_position, insert_length.
void write_truth_tsv(std::ostream& out, const InsertionRecord& record);
InsertionRecord read_truth_tsv(std::istream& in);  // throws ParseError

}  // namespace hgt
