// Deterministic per-case RNG streams: every randomized case derives its own
// generator from (seed, case index), so results never depend on evaluation
// order and are reproducible bit-for-bit.
#pragma once

#include <cstdint>
#include <random>

namespace fuse {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 case_rng(uint64_t seed, uint64_t case_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(case_index)));
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// log-uniform draw, for scale-like quantities
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform_real(rng, std::log(lo), std::log(hi)));
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace fuse
