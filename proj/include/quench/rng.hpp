// Seeded, platform-pinned random number helpers.
//
// mt19937_64 output is fully specified by the standard; the distributions
// are not, so uniform and Gaussian deviates are generated here from raw
// 64-bit draws to keep sampled data bit-identical across toolchains.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace quench {

// Stateless 64-bit mixer (splitmix64 finalizer).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-sample seed rule shared by all Monte Carlo drivers: base ^ mix(index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return base ^ splitmix64(index);
}

// Uniform in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

// Standard normal pair via Box-Muller.
inline std::pair<double, double> gaussian_pair(std::mt19937_64& gen) {
    double u1 = uniform01(gen);
    while (u1 == 0.0) u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace quench
