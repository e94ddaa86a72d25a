// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <variant>

#include "brdfsampler/estimation.hpp"
#include "brdfsampler/objectives.hpp"

namespace brdfsampler {

/// Ground truth drawn from a parameter class, with the Monte Carlo draw count.
struct ClassGroundTruth {
    BrdfClass cls;
    int draws = 8;
};

/// Everything needed to run one benchmark: ground truth, candidate
/// strategies, the fixed estimator, the distance, the cost model with its
/// majorant, the budget ladder, the noise model and the master seed.
struct ExperimentPlan {
    std::variant<BrdfPtr, ClassGroundTruth> ground_truth;
    std::vector<SamplingStrategy> strategies;
    Estimator estimator;
    DistSpec dist_spec;
    CostSpec cost_spec;
    Majorant majorant = Majorant::linear(2.0, 0.0);
    AdmissibilityMode admissibility = AdmissibilityMode::uniform;
    std::vector<std::size_t> budgets;
    NoiseModel noise;
    std::uint64_t seed = 0;
    int replicates = 1;

    bool class_mode() const {
        return std::holds_alternative<ClassGroundTruth>(ground_truth);
    }

    void validate() const;
};

struct CurvePoint {
    std::size_t budget = 0;
    std::size_t n = 0;
    double cost_value = 0.0;
    double error = 0.0;
    double std_error = 0.0;      // across class draws; 0 in single-BRDF mode
    bool fit_converged = true;   // false when any contributing fit was flagged
};

/// Noise seed for one (budget index, draw, replicate) cell, derived from the
/// master seed XOR the budget index. Independent of the strategy, so a
/// strategy compared against itself sees identical noise.
std::uint64_t cell_noise_seed(std::uint64_t master, std::size_t budget_index,
                              std::size_t draw_index, std::size_t replicate_index);

/// Error trajectory of one strategy over the plan's budgets: generate the
/// configuration, simulate measurements, fit the estimator and measure the
/// distance to ground truth. Noise seeds derive from seed XOR budget index
/// (then replicate and draw indices), so identical strategy entries produce
/// identical curves.
std::vector<CurvePoint> error_curve(const ExperimentPlan &plan,
                                    std::size_t strategy_index);

/// Class mode: Monte Carlo mean error over the class draws with the
/// standard error of the mean.
std::vector<CurvePoint> expected_error_curve(const ExperimentPlan &plan,
                                             std::size_t strategy_index);

enum class Verdict {
    strategy1_more_efficient,
    strategy2_more_efficient,
    inconclusive
};

std::string to_string(Verdict v);

struct RatioPoint {
    std::size_t budget = 0;
    double ratio = 0.0;   // e1/e2; meaningless when excluded
    bool excluded = false;  // zero denominator at this budget
};

/// Evidence for the efficiency preorder between two strategies. The tail
/// statistic (maximum ratio over the top half of the budgets) is the
/// finite-budget surrogate for the limsup; strategy 1 wins when it stays
/// below 1 - margin, and symmetrically for strategy 2.
struct StrategyComparisonReport {
    std::vector<CurvePoint> curve1, curve2;
    std::vector<RatioPoint> ratios;
    std::size_t tail_begin = 0;  // index of the first tail budget
    double tail_statistic = 0.0;          // NaN when every tail point is excluded
    double reverse_tail_statistic = 0.0;  // same, for the swapped ratio
    double margin = 0.05;
    Verdict verdict = Verdict::inconclusive;
};

/// Pure verdict computation from two error curves on shared budgets.
StrategyComparisonReport comparison_from_curves(const std::vector<CurvePoint> &curve1,
                                                const std::vector<CurvePoint> &curve2,
                                                double margin = 0.05);

/// Runs both error curves (expected curves in class mode) and applies the
/// tail-statistic rule. Requires exactly two strategies, both admissible.
StrategyComparisonReport compare_strategies(const ExperimentPlan &plan);

struct SelectionReport {
    std::vector<std::size_t> admissible;             // candidate indices
    std::vector<std::size_t> excluded;               // inadmissible candidates
    std::vector<std::vector<CurvePoint>> curves;     // aligned with plan strategies;
                                                     // empty for excluded candidates
    std::vector<std::size_t> winner_per_budget;      // candidate index per budget
    std::size_t winner = 0;                          // winner at the largest budget
};

/// The finite-candidate argmin: at each budget the admissible candidate with
/// the smallest error, ties broken by lower cost and then declaration order.
SelectionReport select_best_strategy(const ExperimentPlan &plan);

}  // namespace brdfsampler
