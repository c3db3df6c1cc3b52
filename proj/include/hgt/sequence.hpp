// FASTA ingestion and validated nucleotide sequences.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hgt/errors.hpp"

namespace hgt {

// Every residue is normalized to one of A, C, G, T or the invalid marker.
inline constexpr char kInvalidBase = 'N';

// A, C, G, T -> 0..3; anything else -> 4 (invalid).
inline int base_index(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return 4;
    }
}

inline bool is_acgt(char c) { return base_index(c) < 4; }

// Uppercase; any symbol outside {A,C,G,T} collapses to the invalid marker.
char normalize_base(char c);

struct NucleotideSequence {
    std::string id;
    std::string residues;  // normalized: uppercase, non-ACGT -> 'N'

    size_t length() const { return residues.size(); }
};

struct WindowSpec {
    int length = 300;  // nucleotides; >= 2 so every window holds a dimer
    int step = 30;     // 1 <= step <= length

    void validate() const;  // throws std::invalid_argument
};

// Records headed by '>' lines, sequence lines of arbitrary width, LF or
// CRLF endings. The id is the header text up to the first whitespace.
std::vector<NucleotideSequence> parse_fasta(std::istream& in);
std::vector<NucleotideSequence> load_fasta(const std::string& path);

void write_fasta(std::ostream& out, const NucleotideSequence& seq,
                 size_t line_width = 70);

// Read-only view of residues [start, start + length).
std::string_view window_at(const NucleotideSequence& seq, size_t start,
                           size_t length);

// True iff the window holds no invalid positions.
bool is_clean(std::string_view window);

}  // namespace hgt
