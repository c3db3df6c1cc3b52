// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace hgt {

// Malformed or unreadable input: FASTA records, model files, truth records.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejection-sampling budget exhausted while drawing clean windows.
class SamplingError : public std::runtime_error {
public:
    explicit SamplingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hgt
