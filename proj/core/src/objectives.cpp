// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace brdfsampler {

void DistSpec::validate() const {
    if (!(p >= 1.0))
        throw std::invalid_argument("DistSpec: p must be >= 1 (or infinity)");
    quadrature.validate();
}

double dist(const DistSpec &spec, const BrdfFunction &f, const BrdfFunction &g) {
    spec.validate();
    const std::vector<PairNode> nodes = pair_nodes(spec.quadrature);

    if (std::isinf(spec.p)) {
        double worst = 0.0;
        for (const PairNode &nd : nodes)
            worst = std::max(worst, std::abs(f.eval(nd.incoming, nd.reflection) -
                                             g.eval(nd.incoming, nd.reflection)));
        return worst;
    }

    std::vector<double> terms(nodes.size());
    std::vector<double> weights(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const PairNode &nd = nodes[k];
        const double diff =
            std::abs(f.eval(nd.incoming, nd.reflection) - g.eval(nd.incoming, nd.reflection));
        double term = std::pow(diff, spec.p);
        if (spec.quadrature.cosine_weighting)
            term *= std::cos(nd.incoming.theta()) * std::cos(nd.reflection.theta());
        terms[k] = nd.weight * term;
        weights[k] = nd.weight;
    }
    const double mean = pairwise_sum(terms) / pairwise_sum(weights);
    return std::pow(mean, 1.0 / spec.p);
}

std::string cost_kind_name(CostKind k) {
    switch (k) {
        case CostKind::cardinality: return "cardinality";
        case CostKind::weighted_points: return "weighted_points";
        case CostKind::travel: return "travel";
    }
    throw std::logic_error("cost_kind_name: unknown kind");
}

void CostSpec::validate() const {
    if (kind == CostKind::weighted_points) {
        // The affine weight must be nonnegative over theta in [0, pi/2].
        if (weight_offset < 0.0 || weight_offset + weight_slope * kHalfPi < 0.0)
            throw std::invalid_argument("CostSpec: weight function must be nonnegative on [0, pi/2]");
    }
}

namespace {

double shorter_arc(double phi_a, double phi_b) {
    double d = std::abs(phi_a - phi_b);
    if (d > kPi) d = kTwoPi - d;
    return d;
}

}  // namespace

double cost(const CostSpec &spec, const MeasurementConfiguration &configuration) {
    spec.validate();
    switch (spec.kind) {
        case CostKind::cardinality:
            return static_cast<double>(configuration.size());
        case CostKind::weighted_points: {
            auto w = [&spec](double theta) {
                return spec.weight_offset + spec.weight_slope * theta;
            };
            std::vector<double> terms(configuration.size());
            for (std::size_t k = 0; k < configuration.size(); ++k) {
                const auto &[wi, wr] = configuration.pair(k);
                terms[k] = w(wi.theta()) * w(wr.theta());
            }
            return pairwise_sum(terms);
        }
        case CostKind::travel: {
            if (configuration.size() < 2) return 0.0;
            std::vector<double> terms(configuration.size() - 1);
            for (std::size_t k = 1; k < configuration.size(); ++k) {
                const auto &[ai, ar] = configuration.pair(k - 1);
                const auto &[bi, br] = configuration.pair(k);
                terms[k - 1] = std::abs(ai.theta() - bi.theta()) +
                               shorter_arc(ai.phi(), bi.phi()) +
                               std::abs(ar.theta() - br.theta()) +
                               shorter_arc(ar.phi(), br.phi());
            }
            return pairwise_sum(terms);
        }
    }
    throw std::logic_error("cost: unknown kind");
}

Majorant Majorant::constant(double value) {
    Majorant m;
    m.kind = MajorantKind::constant;
    m.c = value;
    return m;
}

Majorant Majorant::linear(double a, double b) {
    Majorant m;
    m.kind = MajorantKind::linear;
    m.a = a;
    m.b = b;
    return m;
}

Majorant Majorant::from_table(std::vector<std::pair<std::size_t, double>> entries) {
    Majorant m;
    m.kind = MajorantKind::table;
    m.table = std::move(entries);
    return m;
}

void Majorant::validate() const {
    switch (kind) {
        case MajorantKind::constant:
            if (!(c > 0.0)) throw std::invalid_argument("Majorant: constant must be > 0");
            return;
        case MajorantKind::linear:
            if (!(a * 1.0 + b > 0.0))
                throw std::invalid_argument("Majorant: linear form must be positive for n >= 1");
            return;
        case MajorantKind::table: {
            if (table.empty()) throw std::invalid_argument("Majorant: empty table");
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (!(table[i].second > 0.0))
                    throw std::invalid_argument("Majorant: table values must be > 0");
                if (i > 0 && table[i].first <= table[i - 1].first)
                    throw std::invalid_argument("Majorant: table keys must be strictly ascending");
            }
            return;
        }
    }
    throw std::logic_error("Majorant: unknown kind");
}

double Majorant::operator()(std::size_t n) const {
    switch (kind) {
        case MajorantKind::constant:
            return c;
        case MajorantKind::linear:
            return a * static_cast<double>(n) + b;
        case MajorantKind::table: {
            if (table.empty() || n < table.front().first)
                throw std::invalid_argument("Majorant: table has no entry at or below n");
            double value = table.front().second;
            for (const auto &[key, v] : table) {
                if (key > n) break;
                value = v;
            }
            return value;
        }
    }
    throw std::logic_error("Majorant: unknown kind");
}

std::string admissibility_mode_name(AdmissibilityMode m) {
    return m == AdmissibilityMode::uniform ? "uniform" : "asymptotic";
}

AdmissibilityResult check_admissible(const SamplingStrategy &strategy,
                                     const CostSpec &cost_spec, const Majorant &majorant,
                                     std::span<const std::size_t> budgets,
                                     AdmissibilityMode mode) {
    if (budgets.empty())
        throw std::invalid_argument("check_admissible: budgets must be nonempty");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("check_admissible: budgets must be ascending");
    majorant.validate();

    AdmissibilityResult out;
    out.points.reserve(budgets.size());
    for (const std::size_t budget : budgets) {
        const MeasurementConfiguration config = strategy.generate(budget);
        AdmissibilityPoint pt;
        pt.budget = budget;
        pt.n = config.size();
        pt.cost_value = cost(cost_spec, config);
        pt.bound = majorant(pt.n);
        pt.ok = pt.cost_value < pt.bound;
        if (!pt.ok && !out.first_violation_n) {
            out.first_violation_n = pt.n;
            out.first_violation_budget = pt.budget;
        }
        out.points.push_back(pt);
    }

    if (mode == AdmissibilityMode::uniform) {
        out.admissible = !out.first_violation_n.has_value();
        return out;
    }

    // Asymptotic: the earliest evaluated point after which every bound holds.
    std::size_t start = out.points.size();
    for (std::size_t i = out.points.size(); i-- > 0;) {
        if (!out.points[i].ok) break;
        start = i;
    }
    if (start < out.points.size()) {
        out.admissible = true;
        out.n_min = out.points[start].n;
    }
    return out;
}

}  // namespace brdfsampler
