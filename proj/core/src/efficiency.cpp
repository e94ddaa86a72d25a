// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brdfsampler/rng.hpp"

namespace brdfsampler {

void ExperimentPlan::validate() const {
    if (strategies.empty())
        throw std::invalid_argument("ExperimentPlan: at least one strategy required");
    if (budgets.empty())
        throw std::invalid_argument("ExperimentPlan: budgets must be nonempty");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("ExperimentPlan: budgets must be strictly ascending");
    if (replicates < 1)
        throw std::invalid_argument("ExperimentPlan: replicates must be >= 1");
    estimator.validate();
    dist_spec.validate();
    cost_spec.validate();
    majorant.validate();
    noise.validate();
    if (class_mode()) {
        const auto &cgt = std::get<ClassGroundTruth>(ground_truth);
        if (cgt.draws < 2)
            throw std::invalid_argument("ExperimentPlan: class mode needs at least 2 draws");
        cgt.cls.validate();
    } else if (!std::get<BrdfPtr>(ground_truth)) {
        throw std::invalid_argument("ExperimentPlan: ground truth BRDF is null");
    }
}

std::uint64_t cell_noise_seed(std::uint64_t master, std::size_t budget_index,
                              std::size_t draw_index, std::size_t replicate_index) {
    const std::uint64_t base = master ^ static_cast<std::uint64_t>(budget_index);
    return rng::derive(rng::derive(base, draw_index), replicate_index);
}

namespace {

struct CellOutcome {
    double error = 0.0;
    bool fit_converged = true;
    std::size_t n = 0;
    double cost_value = 0.0;
};

CellOutcome run_cell(const ExperimentPlan &plan, const SamplingStrategy &strategy,
                     const BrdfFunction &truth, std::size_t budget_index,
                     std::size_t draw_index, std::size_t replicate_index) {
    const std::uint64_t seed =
        cell_noise_seed(plan.seed, budget_index, draw_index, replicate_index);
    const std::size_t budget = plan.budgets[budget_index];

    const ObserveFn observe = [&](const MeasurementConfiguration &c) {
        return simulate_measurements(truth, c, plan.noise, seed).values();
    };
    const MeasurementConfiguration config = strategy.generate(budget, observe);
    const MeasurementSet measured =
        simulate_measurements(truth, config, plan.noise, seed);
    const FitResult fitted = fit(plan.estimator, measured);
    return {dist(plan.dist_spec, *fitted.estimate, truth), fitted.converged,
            config.size(), cost(plan.cost_spec, config)};
}

std::vector<CurvePoint> curve_for(const ExperimentPlan &plan,
                                  std::size_t strategy_index) {
    plan.validate();
    if (strategy_index >= plan.strategies.size())
        throw std::invalid_argument("error_curve: strategy index out of range");
    const SamplingStrategy &strategy = plan.strategies[strategy_index];

    std::vector<BrdfPtr> truths;
    if (plan.class_mode()) {
        const auto &cgt = std::get<ClassGroundTruth>(plan.ground_truth);
        truths = draw_from_class(cgt.cls, cgt.draws);
    } else {
        truths = {std::get<BrdfPtr>(plan.ground_truth)};
    }

    std::vector<CurvePoint> out;
    out.reserve(plan.budgets.size());
    for (std::size_t ib = 0; ib < plan.budgets.size(); ++ib) {
        CurvePoint pt;
        pt.budget = plan.budgets[ib];

        std::vector<double> draw_errors;
        draw_errors.reserve(truths.size());
        bool all_converged = true;
        for (std::size_t d = 0; d < truths.size(); ++d) {
            double replicate_sum = 0.0;
            for (int r = 0; r < plan.replicates; ++r) {
                const CellOutcome cell = run_cell(plan, strategy, *truths[d], ib, d,
                                                  static_cast<std::size_t>(r));
                replicate_sum += cell.error;
                all_converged = all_converged && cell.fit_converged;
                if (d == 0 && r == 0) {
                    // Size and cost from the first cell; for the adaptive
                    // family other cells may differ by their observations.
                    pt.n = cell.n;
                    pt.cost_value = cell.cost_value;
                }
            }
            draw_errors.push_back(replicate_sum / plan.replicates);
        }

        double mean = 0.0;
        for (double e : draw_errors) mean += e;
        mean /= static_cast<double>(draw_errors.size());
        double se = 0.0;
        if (draw_errors.size() > 1) {
            double var = 0.0;
            for (double e : draw_errors) var += (e - mean) * (e - mean);
            var /= static_cast<double>(draw_errors.size() - 1);
            se = std::sqrt(var / static_cast<double>(draw_errors.size()));
        }
        pt.error = mean;
        pt.std_error = se;
        pt.fit_converged = all_converged;
        out.push_back(pt);
    }
    return out;
}

void require_admissible(const ExperimentPlan &plan, std::size_t strategy_index) {
    const AdmissibilityResult res =
        check_admissible(plan.strategies[strategy_index], plan.cost_spec, plan.majorant,
                         plan.budgets, plan.admissibility);
    if (!res.admissible)
        throw std::runtime_error(
            "admissibility: strategy \"" + plan.strategies[strategy_index].label() +
            "\" violates the cost majorant at n=" +
            std::to_string(res.first_violation_n.value_or(0)));
}

}  // namespace

std::vector<CurvePoint> error_curve(const ExperimentPlan &plan,
                                    std::size_t strategy_index) {
    return curve_for(plan, strategy_index);
}

std::vector<CurvePoint> expected_error_curve(const ExperimentPlan &plan,
                                             std::size_t strategy_index) {
    if (!plan.class_mode())
        throw std::invalid_argument("expected_error_curve: plan has no BRDF class");
    return curve_for(plan, strategy_index);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::strategy1_more_efficient: return "strategy1_more_efficient";
        case Verdict::strategy2_more_efficient: return "strategy2_more_efficient";
        case Verdict::inconclusive: return "inconclusive";
    }
    throw std::logic_error("to_string: unknown verdict");
}

StrategyComparisonReport comparison_from_curves(const std::vector<CurvePoint> &curve1,
                                                const std::vector<CurvePoint> &curve2,
                                                double margin) {
    if (curve1.size() != curve2.size() || curve1.empty())
        throw std::invalid_argument("comparison_from_curves: curves must share the budget ladder");

    StrategyComparisonReport rep;
    rep.curve1 = curve1;
    rep.curve2 = curve2;
    rep.margin = margin;

    const std::size_t count = curve1.size();
    const std::size_t tail_count = (count + 1) / 2;  // top half, rounded up
    rep.tail_begin = count - tail_count;

    rep.ratios.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RatioPoint rp;
        rp.budget = curve1[i].budget;
        rp.excluded = curve2[i].error == 0.0;
        rp.ratio = rp.excluded ? std::numeric_limits<double>::quiet_NaN()
                               : curve1[i].error / curve2[i].error;
        rep.ratios.push_back(rp);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double tail_max = -1.0, reverse_max = -1.0;
    std::size_t excluded_fwd = 0, excluded_rev = 0;
    for (std::size_t i = rep.tail_begin; i < count; ++i) {
        if (curve2[i].error == 0.0)
            ++excluded_fwd;
        else
            tail_max = std::max(tail_max, curve1[i].error / curve2[i].error);
        if (curve1[i].error == 0.0)
            ++excluded_rev;
        else
            reverse_max = std::max(reverse_max, curve2[i].error / curve1[i].error);
    }
    rep.tail_statistic = tail_max < 0.0 ? nan : tail_max;
    rep.reverse_tail_statistic = reverse_max < 0.0 ? nan : reverse_max;

    rep.verdict = Verdict::inconclusive;
    if (2 * excluded_fwd <= tail_count && tail_max >= 0.0 &&
        tail_max < 1.0 - margin) {
        rep.verdict = Verdict::strategy1_more_efficient;
    } else if (2 * excluded_rev <= tail_count && reverse_max >= 0.0 &&
               reverse_max < 1.0 - margin) {
        rep.verdict = Verdict::strategy2_more_efficient;
    }
    return rep;
}

StrategyComparisonReport compare_strategies(const ExperimentPlan &plan) {
    plan.validate();
    if (plan.strategies.size() != 2)
        throw std::invalid_argument("compare_strategies: exactly two strategies required");
    require_admissible(plan, 0);
    require_admissible(plan, 1);
    return comparison_from_curves(curve_for(plan, 0), curve_for(plan, 1));
}

SelectionReport select_best_strategy(const ExperimentPlan &plan) {
    plan.validate();
    SelectionReport rep;
    rep.curves.resize(plan.strategies.size());
    for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
        const AdmissibilityResult res = check_admissible(
            plan.strategies[s], plan.cost_spec, plan.majorant, plan.budgets,
            plan.admissibility);
        if (res.admissible)
            rep.admissible.push_back(s);
        else
            rep.excluded.push_back(s);
    }
    if (rep.admissible.empty())
        throw std::runtime_error("select_best_strategy: every candidate violates the cost majorant");

    for (const std::size_t s : rep.admissible) rep.curves[s] = curve_for(plan, s);

    rep.winner_per_budget.reserve(plan.budgets.size());
    for (std::size_t ib = 0; ib < plan.budgets.size(); ++ib) {
        std::size_t best = rep.admissible.front();
        for (const std::size_t s : rep.admissible) {
            if (s == best) continue;
            const CurvePoint &cand = rep.curves[s][ib];
            const CurvePoint &cur = rep.curves[best][ib];
            if (cand.error < cur.error ||
                (cand.error == cur.error && cand.cost_value < cur.cost_value)) {
                best = s;  // declaration order wins remaining ties
            }
        }
        rep.winner_per_budget.push_back(best);
    }
    rep.winner = rep.winner_per_budget.back();
    return rep;
}

}  // namespace brdfsampler
