#pragma once

#include <cmath>
#include <cstdint>

namespace listdec {

// Counter-based generator: every value is a pure function of
// (seed, stream, counter), so parallel producers stay deterministic.

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t hash_counter(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ counter);
    return h;
}

// Uniform in (0, 1]; never returns 0 so log() is safe.
inline double uniform01(uint64_t h) {
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

inline double uniform01(uint64_t seed, uint64_t stream, uint64_t counter) {
    return uniform01(hash_counter(seed, stream, counter));
}

// Standard normal via Box-Muller on two counter slots.
inline double gaussian(uint64_t seed, uint64_t stream, uint64_t counter) {
    double u1 = uniform01(hash_counter(seed, stream, 2 * counter));
    double u2 = uniform01(hash_counter(seed, stream, 2 * counter + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Unbiased integer in [0, bound) via 128-bit multiply.
inline uint64_t bounded(uint64_t h, uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(h) * static_cast<__uint128_t>(bound)) >> 64);
}

// Sub-seed derivation for work items and helper streams.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
    return hash_counter(master, 0x5eedULL, counter);
}

} // namespace listdec
