#include "hgt/sequence.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hgt {

char normalize_base(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return is_acgt(u) ? u : kInvalidBase;
}

void WindowSpec::validate() const {
    if (length < 2) {
        throw std::invalid_argument("window length must be >= 2, got " +
                                    std::to_string(length));
    }
    if (step < 1 || step > length) {
        throw std::invalid_argument("window step must be in [1, length], got " +
                                    std::to_string(step));
    }
}

std::vector<NucleotideSequence> parse_fasta(std::istream& in) {
    std::vector<NucleotideSequence> records;
    std::string line;
    bool seen_header = false;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line[0] == '>') {
            seen_header = true;
            NucleotideSequence rec;
            const size_t ws = line.find_first_of(" \t", 1);
            rec.id = line.substr(1, ws == std::string::npos ? ws : ws - 1);
            records.push_back(std::move(rec));
            continue;
        }
        if (!seen_header) {
            throw ParseError("malformed FASTA: sequence data before any '>' header");
        }
        auto& residues = records.back().residues;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            residues.push_back(normalize_base(c));
        }
    }

    if (records.empty()) {
        throw ParseError("no FASTA records in input");
    }
    return records;
}

std::vector<NucleotideSequence> load_fasta(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open FASTA file: " + path);
    }
    return parse_fasta(in);
}

void write_fasta(std::ostream& out, const NucleotideSequence& seq,
                 size_t line_width) {
    if (line_width == 0) line_width = 70;
    out << '>' << seq.id << '\n';
    const std::string& r = seq.residues;
    for (size_t i = 0; i < r.size(); i += line_width) {
        out.write(r.data() + i, static_cast<std::streamsize>(
                                   std::min(line_width, r.size() - i)));
        out.put('\n');
    }
}

std::string_view window_at(const NucleotideSequence& seq, size_t start,
                           size_t length) {
    if (start > seq.length() || length > seq.length() - start) {
        throw std::out_of_range("window [" + std::to_string(start) + ", " +
                                std::to_string(start + length) +
                                ") exceeds sequence length " +
                                std::to_string(seq.length()));
    }
    return std::string_view(seq.residues).substr(start, length);
}

bool is_clean(std::string_view window) {
    for (char c : window) {
        if (!is_acgt(c)) return false;
    }
    return true;
}

}  // namespace hgt
