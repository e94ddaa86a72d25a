// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "brdfsampler/rng.hpp"

namespace brdfsampler {

void QuadratureSpec::validate() const {
    if (node_count < 1)
        throw std::invalid_argument("QuadratureSpec: node_count must be >= 1");
    if (rule == QuadratureRule::product_gauss && node_count > 64)
        throw std::invalid_argument(
            "QuadratureSpec: product_gauss supports at most 64 nodes per dimension");
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - i] = rule.weights[i - 1];
    }
    return rule;
}

namespace {

struct AngleGrid {
    std::vector<double> theta, theta_weight;  // weight includes sin(theta)
    std::vector<double> phi;
    double phi_weight;
};

AngleGrid product_grid(int n) {
    AngleGrid g;
    const GaussRule gl = gauss_legendre(n);
    g.theta.resize(n);
    g.theta_weight.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = (gl.nodes[i] + 1.0) * (kPi / 4.0);
        g.theta[i] = t;
        g.theta_weight[i] = gl.weights[i] * (kPi / 4.0) * std::sin(t);
    }
    g.phi.resize(n);
    for (int i = 0; i < n; ++i) g.phi[i] = i * (kTwoPi / n);
    g.phi_weight = kTwoPi / n;
    return g;
}

}  // namespace

std::vector<HemisphereNode> hemisphere_nodes(const QuadratureSpec &spec) {
    spec.validate();
    std::vector<HemisphereNode> out;
    if (spec.rule == QuadratureRule::product_gauss) {
        const AngleGrid g = product_grid(spec.node_count);
        out.reserve(g.theta.size() * g.phi.size());
        for (std::size_t i = 0; i < g.theta.size(); ++i)
            for (std::size_t j = 0; j < g.phi.size(); ++j)
                out.push_back({Direction(g.theta[i], g.phi[j]),
                               g.theta_weight[i] * g.phi_weight});
    } else {
        rng::Sequence seq(spec.seed);
        const double w = kTwoPi / spec.node_count;
        out.reserve(spec.node_count);
        for (int k = 0; k < spec.node_count; ++k)
            out.push_back({seq.next_hemisphere_direction(), w});
    }
    return out;
}

std::vector<PairNode> pair_nodes(const QuadratureSpec &spec) {
    spec.validate();
    std::vector<PairNode> out;
    if (spec.rule == QuadratureRule::product_gauss) {
        const AngleGrid g = product_grid(spec.node_count);
        const std::size_t n = g.theta.size();
        out.reserve(n * n * n * n);
        for (std::size_t ti = 0; ti < n; ++ti)
            for (std::size_t pi = 0; pi < n; ++pi)
                for (std::size_t tr = 0; tr < n; ++tr)
                    for (std::size_t pr = 0; pr < n; ++pr)
                        out.push_back({Direction(g.theta[ti], g.phi[pi]),
                                       Direction(g.theta[tr], g.phi[pr]),
                                       g.theta_weight[ti] * g.theta_weight[tr] *
                                           g.phi_weight * g.phi_weight});
    } else {
        rng::Sequence seq(spec.seed);
        const double w = kTwoPi * kTwoPi / spec.node_count;
        out.reserve(spec.node_count);
        for (int k = 0; k < spec.node_count; ++k) {
            const Direction wi = seq.next_hemisphere_direction();
            const Direction wr = seq.next_hemisphere_direction();
            out.push_back({wi, wr, w});
        }
    }
    return out;
}

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace brdfsampler
