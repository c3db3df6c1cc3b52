// The eight window sensors: GC and CpG content, heterogeneity indices of
// the three binary sequence derivatives, and dinucleotide twist-class
// fractions, plus an incremental sliding-window scanner.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hgt/sequence.hpp"

namespace hgt {

// Two-letter groupings of the bases. The side encoded as 1 is purine (YR),
// strong (WS) and keto (MK); the heterogeneity index is invariant under
// swapping the 0/1 assignment.
enum class BinaryEncoding { YR = 0, WS = 1, MK = 2 };

// 0/1 class of an A/C/G/T symbol under an encoding.
int encoding_bit(char base, BinaryEncoding enc);

// Angular-variability classes of a dinucleotide step: high, low,
// intermediate and variable twist.
enum class TwistClass : uint8_t { High, Low, Intermediate, Variable };

// Class of the step first->second; both symbols must be A/C/G/T.
TwistClass twist_class(char first, char second);

// Pair and symbol tallies of a binary-encoded window.
struct DimerCounts {
    int64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;  // i-followed-by-j counts
    int64_t n0 = 0, n1 = 0;                      // symbol counts
};

struct TwistFractions {
    double f_h = 0.0, f_i = 0.0, f_v = 0.0;  // L fraction = 1 - (f_h+f_i+f_v)
};

// Fixed component order: [gc, cpg, d_yr, d_ws, d_mk, f_h, f_i, f_v].
struct SensorVector {
    double gc = 0.0, cpg = 0.0;
    double d_yr = 0.0, d_ws = 0.0, d_mk = 0.0;
    double f_h = 0.0, f_i = 0.0, f_v = 0.0;

    static constexpr int kSize = 8;
    static constexpr const char* kOrderTag =
        "gc,cpg,d_yr,d_ws,d_mk,f_h,f_i,f_v";

    std::array<double, 8> as_array() const {
        return {gc, cpg, d_yr, d_ws, d_mk, f_h, f_i, f_v};
    }
};

// All sensor functions require a clean window (no invalid symbols) and
// throw std::domain_error otherwise. gc_content needs length >= 1, the
// dimer-based sensors need length >= 2.
double gc_content(std::string_view window);
double cpg_content(std::string_view window);
DimerCounts tally_dimer_counts(std::string_view window, BinaryEncoding enc);

// d = (N00*N11 - N10*N01) / (N0*N1); 0 when the encoded window is
// homogeneous (N0 = 0 or N1 = 0).
double heterogeneity_index(std::string_view window, BinaryEncoding enc);

TwistFractions twist_fractions(std::string_view window);
SensorVector sensor_vector(std::string_view window);

// One window of a scan; sensors are absent when the window is not clean.
struct SensorPoint {
    size_t start = 0;
    std::optional<SensorVector> sensors;
};

// Slides spec.length windows at spec.step over the sequence, updating count
// state incrementally. Output is identical to per-window sensor_vector
// calls; windows containing invalid symbols yield a no-call point.
std::vector<SensorPoint> rolling_scan(const NucleotideSequence& seq,
                                      const WindowSpec& spec);

}  // namespace hgt
