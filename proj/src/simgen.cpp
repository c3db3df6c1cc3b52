#include "hgt/simgen.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hgt/rng.hpp"

namespace hgt {

namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};
constexpr int kMaxOrder = 12;  // 4^12 contexts; beyond that the table explodes

int draw(const double* probs, int n, Rng& rng) {
    const double u = rng.next_unit();
    double acc = 0.0;
    int last_positive = 0;
    for (int i = 0; i < n; ++i) {
        if (probs[i] <= 0.0) continue;
        last_positive = i;
        acc += probs[i];
        if (u < acc) return i;
    }
    // rounding left acc marginally below 1
    return last_positive;
}

}  // namespace

MarkovModel fit_markov(const NucleotideSequence& seq, int order) {
    if (order < 0 || order > kMaxOrder) {
        throw std::invalid_argument("markov order must be in [0, " +
                                    std::to_string(kMaxOrder) + "]");
    }
    const size_t k = static_cast<size_t>(order);
    const size_t n_contexts = size_t{1} << (2 * k);
    const std::string& s = seq.residues;

    std::vector<std::array<int64_t, 4>> counts(n_contexts, {0, 0, 0, 0});
    std::vector<int64_t> kmer_counts(n_contexts, 0);
    int64_t total_transitions = 0;
    int64_t total_kmers = 0;

    if (s.size() >= k) {
        for (size_t i = 0; i + k <= s.size(); ++i) {
            size_t ctx = 0;
            bool clean = true;
            for (size_t j = 0; j < k; ++j) {
                const int b = base_index(s[i + j]);
                if (b > 3) {
                    clean = false;
                    break;
                }
                ctx = (ctx << 2) | static_cast<size_t>(b);
            }
            if (!clean) continue;
            ++kmer_counts[ctx];
            ++total_kmers;
            if (i + k < s.size()) {
                const int next = base_index(s[i + k]);
                if (next <= 3) {
                    ++counts[ctx][next];
                    ++total_transitions;
                }
            }
        }
    }
    if (total_transitions == 0) {
        throw std::domain_error("fit_markov: no clean (order+1)-mer in '" +
                                seq.id + "'");
    }

    MarkovModel m;
    m.order = order;
    m.transitions.resize(n_contexts);
    for (size_t ctx = 0; ctx < n_contexts; ++ctx) {
        const int64_t total =
            counts[ctx][0] + counts[ctx][1] + counts[ctx][2] + counts[ctx][3];
        for (int b = 0; b < 4; ++b) {
            m.transitions[ctx][b] = static_cast<double>(counts[ctx][b] + 1) /
                                    static_cast<double>(total + 4);
        }
    }
    if (order == 0) {
        m.initial = {1.0};
    } else {
        m.initial.resize(n_contexts);
        for (size_t ctx = 0; ctx < n_contexts; ++ctx) {
            m.initial[ctx] = static_cast<double>(kmer_counts[ctx]) /
                             static_cast<double>(total_kmers);
        }
    }
    return m;
}

NucleotideSequence generate(const MarkovModel& model, size_t length,
                            uint64_t seed, std::string id) {
    const size_t k = static_cast<size_t>(model.order);
    const size_t n_contexts = size_t{1} << (2 * k);
    if (model.transitions.size() != n_contexts ||
        model.initial.size() != n_contexts) {
        throw std::invalid_argument("markov model tables do not match order");
    }

    NucleotideSequence seq;
    seq.id = std::move(id);
    if (length == 0) return seq;
    seq.residues.reserve(length);

    Rng rng(seed);
    size_t ctx = 0;
    if (k > 0) {
        ctx = static_cast<size_t>(
            draw(model.initial.data(), static_cast<int>(n_contexts), rng));
        for (size_t j = 0; j < k && seq.residues.size() < length; ++j) {
            seq.residues.push_back(
                kBases[(ctx >> (2 * (k - 1 - j))) & 3]);
        }
    }
    const size_t mask = n_contexts - 1;
    while (seq.residues.size() < length) {
        const int b = draw(model.transitions[ctx].data(), 4, rng);
        seq.residues.push_back(kBases[b]);
        ctx = ((ctx << 2) | static_cast<size_t>(b)) & mask;
    }
    return seq;
}

Insertion insert_fragment(const NucleotideSequence& acceptor,
                          const std::string& donor_id,
                          std::string_view fragment, size_t position) {
    if (position > acceptor.length()) {
        throw std::out_of_range("insert position " + std::to_string(position) +
                                " beyond acceptor length " +
                                std::to_string(acceptor.length()));
    }
    Insertion ins;
    ins.chimera.id = acceptor.id + "_chimera";
    ins.chimera.residues.reserve(acceptor.length() + fragment.size());
    ins.chimera.residues.append(acceptor.residues, 0, position);
    ins.chimera.residues.append(fragment);
    ins.chimera.residues.append(acceptor.residues, position,
                                acceptor.length() - position);
    ins.record = {acceptor.id, donor_id, position, fragment.size()};
    return ins;
}

ExperimentBundle make_experiment(const NucleotideSequence& donor,
                                 const NucleotideSequence& acceptor,
                                 size_t insert_length,
                                 std::optional<size_t> position,
                                 uint64_t seed) {
    if (insert_length < 1 || insert_length > donor.length()) {
        throw std::invalid_argument("insert_length must be in [1, donor length]");
    }
    const size_t pos = position.value_or(acceptor.length() / 2);

    // Rejection-sample one clean donor fragment.
    Rng rng(seed);
    const uint64_t n_starts = donor.length() - insert_length + 1;
    constexpr int kBudget = 1000;
    size_t fragment_start = 0;
    bool found = false;
    for (int attempt = 0; attempt < kBudget && !found; ++attempt) {
        fragment_start = static_cast<size_t>(rng.below(n_starts));
        found = is_clean(window_at(donor, fragment_start, insert_length));
    }
    if (!found) {
        throw SamplingError("no clean donor fragment of length " +
                            std::to_string(insert_length) + " found in '" +
                            donor.id + "' after " + std::to_string(kBudget) +
                            " attempts");
    }

    Insertion ins = insert_fragment(
        acceptor, donor.id, window_at(donor, fragment_start, insert_length), pos);

    ExperimentBundle bundle;
    bundle.chimera = std::move(ins.chimera);
    bundle.record = ins.record;
    bundle.donor_fragment_start = fragment_start;
    return bundle;
}

void write_truth_tsv(std::ostream& out, const InsertionRecord& record) {
    out << "acceptor_id\tdonor_id\tinsert_position\tinsert_length\n";
    out << record.acceptor_id << '\t' << record.donor_id << '\t'
        << record.insert_position << '\t' << record.insert_length << '\n';
}

InsertionRecord read_truth_tsv(std::istream& in) {
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "acceptor_id\tdonor_id\tinsert_position\tinsert_length") {
                throw ParseError("truth record: unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream is(line);
        InsertionRecord rec;
        if (!(is >> rec.acceptor_id >> rec.donor_id >> rec.insert_position >>
              rec.insert_length)) {
            throw ParseError("truth record: malformed row '" + line + "'");
        }
        return rec;
    }
    throw ParseError("truth record: no data row");
}

}  // namespace hgt
