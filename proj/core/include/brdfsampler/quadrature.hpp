// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brdfsampler/geometry.hpp"

namespace brdfsampler {

enum class QuadratureRule { product_gauss, monte_carlo };

/// Numerical rule for integrals over the hemisphere and over
/// (hemisphere)^2 with the solid-angle measure sin(theta) dtheta dphi.
///
/// node_count is per angular dimension for product_gauss and the total
/// sample count for monte_carlo. cosine_weighting is consumed by the
/// distance computation, not by node generation.
struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::product_gauss;
    int node_count = 8;
    std::uint64_t seed = 0;
    bool cosine_weighting = false;

    void validate() const;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
GaussRule gauss_legendre(int n);

struct HemisphereNode {
    Direction dir;
    double weight;  // solid-angle weight; weights sum to ~2*pi
};

struct PairNode {
    Direction incoming;
    Direction reflection;
    double weight;
};

/// Nodes for integrals of g(omega) over the hemisphere.
/// product_gauss: Gauss-Legendre in theta on [0, pi/2] (weight includes
/// sin(theta)), equispaced trapezoid nodes in phi. monte_carlo: seeded
/// solid-angle-uniform samples, each with weight 2*pi/N.
std::vector<HemisphereNode> hemisphere_nodes(const QuadratureSpec &spec);

/// Tensor (or sampled) nodes over (hemisphere)^2 for distances between BRDFs.
std::vector<PairNode> pair_nodes(const QuadratureSpec &spec);

/// Order-stable pairwise summation; reduction tree depends only on length.
double pairwise_sum(std::span<const double> terms);

}  // namespace brdfsampler
