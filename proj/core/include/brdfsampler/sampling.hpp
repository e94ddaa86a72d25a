// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "brdfsampler/geometry.hpp"

namespace brdfsampler {

class MeasurementSet;  // measurement.hpp

/// A finite set of (incoming, reflection) measurement pairs, grouped by
/// incoming direction. The flattened pair order is group-major and is the
/// canonical sample order everywhere (values, CSV rows, noise counters).
///
/// Invariants enforced at construction: at least one incoming direction,
/// no empty reflection list, no duplicate (incoming, reflection) pair after
/// canonicalization, and size() equal to the recomputed sum of the
/// per-incoming reflection counts.
class MeasurementConfiguration {
  public:
    MeasurementConfiguration(std::vector<Direction> incoming,
                             std::vector<std::vector<Direction>> reflections);

    /// Groups pairs by exact incoming direction, first-appearance order.
    static MeasurementConfiguration from_pairs(
        std::span<const std::pair<Direction, Direction>> pairs);

    const std::vector<Direction> &incoming() const { return incoming_; }
    const std::vector<std::vector<Direction>> &reflections() const {
        return reflections_;
    }

    std::size_t incoming_count() const { return incoming_.size(); }
    std::size_t reflection_count(std::size_t p) const {
        return reflections_[p].size();
    }
    std::size_t size() const { return pairs_.size(); }

    const std::pair<Direction, Direction> &pair(std::size_t k) const {
        return pairs_[k];
    }
    const std::vector<std::pair<Direction, Direction>> &pairs() const {
        return pairs_;
    }

    bool operator==(const MeasurementConfiguration &o) const;

  private:
    std::vector<Direction> incoming_;
    std::vector<std::vector<Direction>> reflections_;
    std::vector<std::pair<Direction, Direction>> pairs_;
};

// Point-set builders shared by the strategy families.

/// Fibonacci hemisphere set: cos(theta_k) = 1 - (k + 0.5)/K,
/// phi_k = 2*pi*k*(golden ratio conjugate) mod 2*pi.
std::vector<Direction> fibonacci_hemisphere(std::size_t count);

/// Full grid with theta rows at (k + 0.5) * (pi/2) / n_theta and equispaced
/// phi columns at k * 2*pi / n_phi.
std::vector<Direction> equispaced_hemisphere(std::size_t n_theta, std::size_t n_phi);

/// Equispaced ring grid with exactly `count` nodes on the hemisphere
/// (rows in theta, nodes distributed as evenly as possible across rows).
std::vector<Direction> ring_hemisphere(std::size_t count);

/// Equispaced ring grid with exactly `count` nodes inside the cone of the
/// given half-angle around `axis`. Nodes falling below the hemisphere are
/// flipped back up, which cannot move them out of the cone. beta_offset
/// shifts every ring's azimuth by that fraction of a step.
std::vector<Direction> cone_set(const Direction &axis, double half_angle,
                                std::size_t count, double beta_offset = 0.0);

/// Grid resolutions for a total pair budget: the smallest n_theta with
/// (n_theta * n_phi)^2 >= budget under the aspect rule n_phi = 2 * n_theta.
/// A budget of 1 degenerates to a single node (1 x 1).
std::pair<std::size_t, std::size_t> equispaced_resolution(std::size_t budget);

enum class UniformVariant { fibonacci, random };

MeasurementConfiguration equispaced_grid(std::size_t budget);

/// Splits the budget as P_inc = ceil(sqrt(budget)) incoming directions with
/// ceil(budget / P_inc) reflections each; every set is a Fibonacci set by
/// default, or seeded solid-angle-uniform draws for the random variant.
MeasurementConfiguration uniform_sphere(std::size_t budget, std::uint64_t seed = 0,
                                        UniformVariant variant = UniformVariant::fibonacci);

/// Equispaced incoming grid; each reflection set concentrates the fraction
/// 1 - 1/(1 + concentration) of its nodes inside the cone around the mirror
/// direction and spreads the remainder over a coarse hemisphere grid.
MeasurementConfiguration specular_grid(std::size_t budget, double concentration,
                                       double cone_half_angle = kPi / 8.0);

/// Greedy insertion starting from a uniform_sphere configuration of size
/// max(8, budget/4), augmented with the observed pairs. Candidates come from
/// a fixed 10x-oversampled uniform pool; the inserted pair maximizes
///   (value range among the 4 nearest observed samples + 1e-12)
///     * (distance to the nearest existing pair),
/// ties broken lexicographically by (theta_i, phi_i, theta_r, phi_r).
MeasurementConfiguration adaptive_greedy(std::size_t budget,
                                         const MeasurementSet &observed,
                                         std::uint64_t seed);

enum class StrategyFamily {
    equispaced_grid,
    uniform_sphere,
    specular_grid,
    adaptive_greedy
};

std::string family_name(StrategyFamily f);

struct StrategyOptions {
    UniformVariant variant = UniformVariant::fibonacci;  // uniform_sphere
    double concentration = 3.0;                          // specular_grid
    double cone_half_angle = kPi / 8.0;                  // specular_grid
};

/// Values observed on a configuration, aligned with its pair order; lets the
/// adaptive family measure its seed configuration inside a pipeline.
using ObserveFn =
    std::function<std::vector<double>(const MeasurementConfiguration &)>;

/// A deterministic generator of measurement configurations indexed by budget,
/// with |generate(b1)| <= |generate(b2)| whenever b1 <= b2.
class SamplingStrategy {
  public:
    explicit SamplingStrategy(StrategyFamily family, StrategyOptions options = {},
                              std::uint64_t seed = 0, std::string label = "");

    StrategyFamily family() const { return family_; }
    const StrategyOptions &options() const { return options_; }
    std::uint64_t seed() const { return seed_; }
    const std::string &label() const { return label_; }

    /// Generation without observations; the adaptive family falls back to a
    /// value-free greedy (distance-driven insertion).
    MeasurementConfiguration generate(std::size_t budget) const;

    /// Generation with an observation callback for the adaptive family;
    /// other families ignore it.
    MeasurementConfiguration generate(std::size_t budget,
                                      const ObserveFn &observe) const;

  private:
    StrategyFamily family_;
    StrategyOptions options_;
    std::uint64_t seed_;
    std::string label_;
};

/// Configurations for strictly ascending budgets; asserts the nondecreasing
/// size invariant.
std::vector<MeasurementConfiguration> strategy_sequence(
    const SamplingStrategy &strategy, std::span<const std::size_t> budgets);

}  // namespace brdfsampler
