// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include "brdfsampler/brdf.hpp"
#include "brdfsampler/measurement.hpp"

namespace brdfsampler {

enum class EstimatorKind { nearest_neighbor, idw, parametric_fit };

std::string estimator_kind_name(EstimatorKind k);

struct Estimator {
    EstimatorKind kind = EstimatorKind::nearest_neighbor;

    // idw
    double idw_power = 2.0;
    int idw_neighbors = 16;

    // parametric_fit
    BrdfFamily fit_family = BrdfFamily::lambertian;
    int max_iterations = 100;

    void validate() const;
};

struct FitResult {
    BrdfPtr estimate;
    bool converged = true;  // false when the iteration limit was hit with a
                            // residual gradient norm above 1e-6
    int iterations = 0;
    double gradient_norm = 0.0;
};

/// Turns a measurement set into an evaluatable BRDF. nearest_neighbor and
/// idw wrap the measurements in a TabulatedBrdf; parametric_fit minimizes
/// the sum of squared residuals over the family parameters by damped
/// least-squares iteration from a deterministic initialization.
/// Non-convergence is reported through the flag; the best iterate is still
/// returned.
FitResult fit(const Estimator &estimator, const MeasurementSet &measurements);

/// Evaluation of a fitted estimate; total and finite.
double evaluate_estimate(const BrdfFunction &estimate, const Direction &incoming,
                         const Direction &reflection);

namespace detail {

/// Residual Jacobian of the parametric families at the given parameter
/// vector (rows follow the measurement pairs, columns the canonical
/// parameter order). Analytic for lambertian and phong, central finite
/// differences for cook_torrance. Exposed for the gradient cross-check.
std::vector<std::vector<double>> fit_jacobian(BrdfFamily family,
                                              const std::vector<double> &params,
                                              const MeasurementConfiguration &config);

/// Model prediction column for the same parametrization.
std::vector<double> fit_predictions(BrdfFamily family,
                                    const std::vector<double> &params,
                                    const MeasurementConfiguration &config);

}  // namespace detail

}  // namespace brdfsampler
