// Deterministic random source with portable distribution helpers.
//
// std::mt19937_64 output is fully specified by the standard; the helpers
// below avoid std::uniform_*_distribution, whose mapping to engine output
// is implementation-defined. Identical seeds therefore give identical
// streams on every platform.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace hgt {

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // unbiased integer in [0, n), n >= 1
    uint64_t below(uint64_t n) {
        const uint64_t max = std::numeric_limits<uint64_t>::max();
        const uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
        const uint64_t bound = max - rem;
        uint64_t r = engine_();
        while (r > bound) r = engine_();
        return r % n;
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // Seed for an independent stream derived from (seed, stream).
    static uint64_t derive(uint64_t seed, uint64_t stream) {
        uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hgt
