#include "hgt/sensors.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgt {

namespace {

constexpr int kA = 0, kC = 1, kG = 2, kT = 3, kInvalid = 4;

// 1-bit per base, indexed [encoding][base_index].
// YR: purines A,G = 1; WS: strong C,G = 1; MK: keto G,T = 1.
constexpr int kEncodingBit[3][4] = {
    {1, 0, 1, 0},  // YR
    {0, 1, 1, 0},  // WS
    {0, 0, 1, 1},  // MK
};

// Twist class of the step [first][second], bases in A,C,G,T order.
constexpr TwistClass kH = TwistClass::High;
constexpr TwistClass kL = TwistClass::Low;
constexpr TwistClass kI = TwistClass::Intermediate;
constexpr TwistClass kV = TwistClass::Variable;
constexpr TwistClass kTwistTable[4][4] = {
    {kL, kI, kL, kI},  // A.
    {kV, kL, kV, kL},  // C.
    {kH, kH, kL, kI},  // G.
    {kV, kH, kV, kL},  // T.
};

// Count state of one window: per-symbol and per-adjacent-pair tallies over
// the 5-letter alphabet (A, C, G, T, invalid). Everything a sensor needs is
// derived from these integers, so the incremental scanner and the naive
// per-window path produce bit-identical results.
struct WindowCounts {
    std::array<int64_t, 5> sym{};
    int64_t pair[5][5] = {};
    int64_t len = 0;

    bool clean() const { return sym[kInvalid] == 0; }
};

WindowCounts count_window(std::string_view w) {
    WindowCounts wc;
    wc.len = static_cast<int64_t>(w.size());
    for (char c : w) ++wc.sym[base_index(c)];
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        ++wc.pair[base_index(w[i])][base_index(w[i + 1])];
    }
    return wc;
}

double heterogeneity_from_pairs(const WindowCounts& wc, int enc) {
    DimerCounts d;
    for (int b = 0; b < 4; ++b) {
        (kEncodingBit[enc][b] ? d.n1 : d.n0) += wc.sym[b];
    }
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int64_t n = wc.pair[a][b];
            const int i = kEncodingBit[enc][a], j = kEncodingBit[enc][b];
            if (i == 0 && j == 0) d.n00 += n;
            else if (i == 0) d.n01 += n;
            else if (j == 0) d.n10 += n;
            else d.n11 += n;
        }
    }
    if (d.n0 == 0 || d.n1 == 0) return 0.0;
    return static_cast<double>(d.n00 * d.n11 - d.n10 * d.n01) /
           (static_cast<double>(d.n0) * static_cast<double>(d.n1));
}

SensorVector sensors_from_counts(const WindowCounts& wc) {
    const double len = static_cast<double>(wc.len);
    const double steps = static_cast<double>(wc.len - 1);

    SensorVector s;
    s.gc = static_cast<double>(wc.sym[kC] + wc.sym[kG]) / len;
    s.cpg = static_cast<double>(wc.pair[kC][kG]) / steps;
    s.d_yr = heterogeneity_from_pairs(wc, 0);
    s.d_ws = heterogeneity_from_pairs(wc, 1);
    s.d_mk = heterogeneity_from_pairs(wc, 2);

    int64_t h = 0, i = 0, v = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            switch (kTwistTable[a][b]) {
                case TwistClass::High: h += wc.pair[a][b]; break;
                case TwistClass::Intermediate: i += wc.pair[a][b]; break;
                case TwistClass::Variable: v += wc.pair[a][b]; break;
                case TwistClass::Low: break;
            }
        }
    }
    s.f_h = static_cast<double>(h) / steps;
    s.f_i = static_cast<double>(i) / steps;
    s.f_v = static_cast<double>(v) / steps;
    return s;
}

void require_clean(std::string_view w, size_t min_len, const char* op) {
    if (w.size() < min_len) {
        throw std::domain_error(std::string(op) + ": window length " +
                                std::to_string(w.size()) + " below minimum " +
                                std::to_string(min_len));
    }
    if (!is_clean(w)) {
        throw std::domain_error(std::string(op) +
                                ": window contains invalid symbols");
    }
}

}  // namespace

int encoding_bit(char base, BinaryEncoding enc) {
    const int b = base_index(base);
    if (b == kInvalid) {
        throw std::domain_error("encoding_bit: invalid symbol");
    }
    return kEncodingBit[static_cast<int>(enc)][b];
}

TwistClass twist_class(char first, char second) {
    const int a = base_index(first), b = base_index(second);
    if (a == kInvalid || b == kInvalid) {
        throw std::domain_error("twist_class: invalid symbol");
    }
    return kTwistTable[a][b];
}

double gc_content(std::string_view window) {
    require_clean(window, 1, "gc_content");
    int64_t gc = 0;
    for (char c : window) {
        if (c == 'G' || c == 'C') ++gc;
    }
    return static_cast<double>(gc) / static_cast<double>(window.size());
}

double cpg_content(std::string_view window) {
    require_clean(window, 2, "cpg_content");
    int64_t cg = 0;
    for (size_t i = 0; i + 1 < window.size(); ++i) {
        if (window[i] == 'C' && window[i + 1] == 'G') ++cg;
    }
    return static_cast<double>(cg) / static_cast<double>(window.size() - 1);
}

DimerCounts tally_dimer_counts(std::string_view window, BinaryEncoding enc) {
    require_clean(window, 2, "tally_dimer_counts");
    const int e = static_cast<int>(enc);
    DimerCounts d;
    for (char c : window) {
        (kEncodingBit[e][base_index(c)] ? d.n1 : d.n0) += 1;
    }
    for (size_t i = 0; i + 1 < window.size(); ++i) {
        const int a = kEncodingBit[e][base_index(window[i])];
        const int b = kEncodingBit[e][base_index(window[i + 1])];
        if (a == 0 && b == 0) ++d.n00;
        else if (a == 0) ++d.n01;
        else if (b == 0) ++d.n10;
        else ++d.n11;
    }
    return d;
}

double heterogeneity_index(std::string_view window, BinaryEncoding enc) {
    const DimerCounts d = tally_dimer_counts(window, enc);
    if (d.n0 == 0 || d.n1 == 0) return 0.0;
    return static_cast<double>(d.n00 * d.n11 - d.n10 * d.n01) /
           (static_cast<double>(d.n0) * static_cast<double>(d.n1));
}

TwistFractions twist_fractions(std::string_view window) {
    require_clean(window, 2, "twist_fractions");
    int64_t h = 0, i = 0, v = 0;
    for (size_t p = 0; p + 1 < window.size(); ++p) {
        switch (kTwistTable[base_index(window[p])][base_index(window[p + 1])]) {
            case TwistClass::High: ++h; break;
            case TwistClass::Intermediate: ++i; break;
            case TwistClass::Variable: ++v; break;
            case TwistClass::Low: break;
        }
    }
    const double steps = static_cast<double>(window.size() - 1);
    return {static_cast<double>(h) / steps, static_cast<double>(i) / steps,
            static_cast<double>(v) / steps};
}

SensorVector sensor_vector(std::string_view window) {
    require_clean(window, 2, "sensor_vector");
    return sensors_from_counts(count_window(window));
}

std::vector<SensorPoint> rolling_scan(const NucleotideSequence& seq,
                                      const WindowSpec& spec) {
    spec.validate();
    const std::string& s = seq.residues;
    const size_t len = static_cast<size_t>(spec.length);
    const size_t step = static_cast<size_t>(spec.step);
    if (s.size() < len) {
        throw std::domain_error("rolling_scan: sequence length " +
                                std::to_string(s.size()) +
                                " shorter than one window of " +
                                std::to_string(len));
    }

    WindowCounts wc;
    wc.len = static_cast<int64_t>(len);
    for (size_t p = 0; p < len; ++p) ++wc.sym[base_index(s[p])];
    for (size_t p = 0; p + 1 < len; ++p) {
        ++wc.pair[base_index(s[p])][base_index(s[p + 1])];
    }

    std::vector<SensorPoint> out;
    out.reserve((s.size() - len) / step + 1);

    size_t start = 0;
    while (true) {
        SensorPoint point;
        point.start = start;
        if (wc.clean()) point.sensors = sensors_from_counts(wc);
        out.push_back(point);

        if (start + step + len > s.size()) break;
        const size_t next = start + step;

        // Window symbols move from [start, start+len) to [next, next+len);
        // pairs (indexed by the position of their first symbol) move from
        // [start, start+len-1) to [next, next+len-1). The underlying
        // sequence is fixed, so advancing only adjusts membership.
        for (size_t p = start; p < next; ++p) --wc.sym[base_index(s[p])];
        for (size_t p = start + len; p < next + len; ++p) {
            ++wc.sym[base_index(s[p])];
        }
        const size_t pair_rm_end = std::min(next, start + len - 1);
        for (size_t p = start; p < pair_rm_end; ++p) {
            --wc.pair[base_index(s[p])][base_index(s[p + 1])];
        }
        const size_t pair_add_begin = std::max(next, start + len - 1);
        for (size_t p = pair_add_begin; p + 1 < next + len; ++p) {
            ++wc.pair[base_index(s[p])][base_index(s[p + 1])];
        }
        start = next;
    }
    return out;
}

}  // namespace hgt
