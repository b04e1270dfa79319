#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace facies::detail {

// All stochastic choices in the library go through these helpers instead of
// std::<distribution> adapters, whose output is implementation-defined. The
// raw mt19937_64 stream is pinned by the standard, so seeded runs reproduce
// bit-identically across standard libraries.

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1. Rejection-free modulo is fine here:
/// n is tiny relative to 2^64, the bias is ~n/2^64.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

/// Standard normal via Box-Muller.
inline double normal01(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Fisher-Yates shuffle, explicit so the permutation depends only on the seed.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Stream seeding for sub-generators (per-region, per-attribute) from one
/// master seed; splitmix64 step keeps nearby (seed, index) pairs decorrelated.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace facies::detail
