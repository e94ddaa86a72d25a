// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <optional>

#include "brdfsampler/brdf.hpp"
#include "brdfsampler/quadrature.hpp"
#include "brdfsampler/sampling.hpp"

namespace brdfsampler {

/// Normalized L_p distance between two BRDFs over (hemisphere)^2:
///   ( (1/W) * sum_k w_k |f - g|^p (pair_k) )^(1/p),  W = sum_k w_k,
/// optionally with the integrand multiplied by cos(theta_i) cos(theta_r)
/// when the quadrature requests cosine weighting. p = infinity is the
/// maximum absolute difference over the node set.
struct DistSpec {
    double p = 2.0;  // in [1, inf]
    QuadratureSpec quadrature;

    void validate() const;
};

double dist(const DistSpec &spec, const BrdfFunction &f, const BrdfFunction &g);

enum class CostKind { cardinality, weighted_points, travel };

std::string cost_kind_name(CostKind k);

/// cardinality: the pair count n. weighted_points: sum over pairs of
/// w(theta_i) * w(theta_r) with the affine weight w(t) = offset + slope * t.
/// travel: total L1 angular movement between consecutive pairs in
/// configuration order, phi differences taken along the shorter arc.
struct CostSpec {
    CostKind kind = CostKind::cardinality;
    double weight_offset = 1.0;
    double weight_slope = 0.0;

    void validate() const;
};

double cost(const CostSpec &spec, const MeasurementConfiguration &configuration);

enum class MajorantKind { constant, linear, table };

/// Upper bound C_max(n) for admissible costs. The table form evaluates to
/// the entry with the largest n not exceeding the query.
struct Majorant {
    MajorantKind kind = MajorantKind::linear;
    double c = 1.0;            // constant
    double a = 1.0, b = 0.0;   // linear: a*n + b
    std::vector<std::pair<std::size_t, double>> table;  // ascending in n

    static Majorant constant(double value);
    static Majorant linear(double a, double b);
    static Majorant from_table(std::vector<std::pair<std::size_t, double>> entries);

    double operator()(std::size_t n) const;
    void validate() const;
};

enum class AdmissibilityMode { uniform, asymptotic };

std::string admissibility_mode_name(AdmissibilityMode m);

struct AdmissibilityPoint {
    std::size_t budget = 0;
    std::size_t n = 0;  // actual configuration size
    double cost_value = 0.0;
    double bound = 0.0;
    bool ok = false;  // cost_value < bound
};

struct AdmissibilityResult {
    bool admissible = false;
    std::optional<std::size_t> first_violation_n;
    std::optional<std::size_t> first_violation_budget;
    std::optional<std::size_t> n_min;  // asymptotic mode: size of the first
                                       // budget after which all bounds hold
    std::vector<AdmissibilityPoint> points;
};

/// Evaluates Cost(strategy(budget)) < C_max(n) over the given ascending
/// budgets. uniform mode requires the bound at every budget; asymptotic mode
/// reports the earliest evaluated n_min after which the bound always holds.
AdmissibilityResult check_admissible(const SamplingStrategy &strategy,
                                     const CostSpec &cost_spec, const Majorant &majorant,
                                     std::span<const std::size_t> budgets,
                                     AdmissibilityMode mode);

}  // namespace brdfsampler
