// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

#include "brdfsampler/geometry.hpp"

namespace brdfsampler::rng {

// All randomness in the library flows through this fixed generator so that
// results are reproducible bit-for-bit across platforms and run counts.
// Measurement provenance records the identifier below.
inline constexpr const char *kAlgorithmId = "splitmix64/box-muller-v1";

inline std::uint64_t split_mix64(std::uint64_t &state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based derivation: a sub-seed for (seed, index), independent of
/// evaluation order.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return split_mix64(s);
}

class Sequence {
  public:
    explicit Sequence(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return split_mix64(state_); }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    /// Solid-angle-uniform direction on the upper hemisphere.
    Direction next_hemisphere_direction() {
        const double z = 1.0 - next_double();  // cos(theta) in (0, 1]
        const double phi = kTwoPi * next_double();
        return Direction(std::acos(std::min(z, 1.0)), phi);
    }

  private:
    std::uint64_t state_;
};

}  // namespace brdfsampler::rng
