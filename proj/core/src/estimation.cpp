// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "brdfsampler/tabulated.hpp"

namespace brdfsampler {

std::string estimator_kind_name(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::nearest_neighbor: return "nearest_neighbor";
        case EstimatorKind::idw: return "idw";
        case EstimatorKind::parametric_fit: return "parametric_fit";
    }
    throw std::logic_error("estimator_kind_name: unknown kind");
}

void Estimator::validate() const {
    if (!(idw_power > 0.0))
        throw std::invalid_argument("Estimator: idw power must be > 0");
    if (idw_neighbors < 1)
        throw std::invalid_argument("Estimator: idw neighbor count must be >= 1");
    if (max_iterations < 1)
        throw std::invalid_argument("Estimator: fit iteration limit must be >= 1");
}

namespace {

constexpr double kGradientTol = 1e-6;

std::vector<double> params_to_vector(BrdfFamily family,
                                     const std::map<std::string, double> &named) {
    std::vector<double> x;
    for (const auto &name : family_parameter_names(family)) x.push_back(named.at(name));
    return x;
}

std::map<std::string, double> vector_to_params(BrdfFamily family,
                                               const std::vector<double> &x) {
    std::map<std::string, double> named;
    const auto &names = family_parameter_names(family);
    for (std::size_t i = 0; i < names.size(); ++i) named[names[i]] = x[i];
    return named;
}

void project(BrdfFamily family, std::vector<double> &x) {
    switch (family) {
        case BrdfFamily::lambertian:
            x[0] = std::clamp(x[0], 0.0, 1.0);
            return;
        case BrdfFamily::phong:
            x[0] = std::clamp(x[0], 0.0, 1.0);
            x[1] = std::clamp(x[1], 0.0, 1.0);
            x[2] = std::clamp(x[2], 0.0, 1e4);
            break;
        case BrdfFamily::cook_torrance:
            x[0] = std::clamp(x[0], 0.0, 1.0);
            x[1] = std::clamp(x[1], 0.0, 1.0);
            x[2] = std::clamp(x[2], 1e-3, 1.0);
            x[3] = std::clamp(x[3], 0.0, 1.0);
            break;
    }
    if (x[0] + x[1] > 1.0) {
        const double s = 1.0 / (x[0] + x[1]);
        x[0] *= s;
        x[1] *= s;
        while (x[0] + x[1] > 1.0) x[1] = std::nextafter(x[1], 0.0);
    }
}

double eval_family(BrdfFamily family, const std::vector<double> &x,
                   const Direction &wi, const Direction &wr) {
    switch (family) {
        case BrdfFamily::lambertian:
            return eval_lambertian({x[0]}, wi, wr);
        case BrdfFamily::phong:
            return eval_phong({x[0], x[1], x[2]}, wi, wr);
        case BrdfFamily::cook_torrance:
            return eval_cook_torrance({x[0], x[1], x[2], x[3]}, wi, wr);
    }
    throw std::logic_error("eval_family: unknown family");
}

// Solves A x = b for small symmetric systems by Gaussian elimination with
// partial pivoting; returns false on a singular pivot.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double> &x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return true;
}

double sse_of(BrdfFamily family, const std::vector<double> &x,
              const MeasurementSet &m) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const auto &[wi, wr] = m.configuration().pair(k);
        const double r = eval_family(family, x, wi, wr) - m.values()[k];
        s += r * r;
    }
    return s;
}

std::vector<double> initial_guess(BrdfFamily family, const MeasurementSet &m) {
    double mean = 0.0;
    for (double v : m.values()) mean += v;
    mean /= static_cast<double>(m.size());
    const double kd0 = std::clamp(mean * kPi, 0.0, 1.0);

    if (family == BrdfFamily::lambertian) return {kd0};

    const double ks0 = std::max(0.0, 1.0 - kd0) / 2.0;
    if (family == BrdfFamily::phong) {
        // Coarse 8-point line search over the lobe exponent.
        static const double grid[8] = {1, 2, 4, 8, 16, 32, 64, 128};
        double best_e = grid[0], best_sse = std::numeric_limits<double>::infinity();
        for (double e : grid) {
            const double s = sse_of(family, {kd0, ks0, e}, m);
            if (s < best_sse) {
                best_sse = s;
                best_e = e;
            }
        }
        return {kd0, ks0, best_e};
    }

    static const double grid[8] = {0.05, 0.1, 0.15, 0.2, 0.3, 0.45, 0.65, 1.0};
    double best_m = grid[0], best_sse = std::numeric_limits<double>::infinity();
    for (double mm : grid) {
        const double s = sse_of(family, {kd0, ks0, mm, 0.5}, m);
        if (s < best_sse) {
            best_sse = s;
            best_m = mm;
        }
    }
    return {kd0, ks0, best_m, 0.5};
}

FitResult run_levenberg_marquardt(BrdfFamily family, const MeasurementSet &m,
                                  int max_iterations) {
    std::vector<double> x = initial_guess(family, m);
    project(family, x);
    const std::size_t dim = x.size();
    const std::size_t n = m.size();

    double sse = sse_of(family, x, m);
    double lambda = 1e-3;
    double gradient_norm = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (; iterations < max_iterations; ++iterations) {
        if (sse == 0.0) {
            gradient_norm = 0.0;
            break;
        }
        const auto jac = detail::fit_jacobian(family, x, m.configuration());
        const auto pred = detail::fit_predictions(family, x, m.configuration());

        std::vector<double> g(dim, 0.0);
        std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
        for (std::size_t k = 0; k < n; ++k) {
            const double r = pred[k] - m.values()[k];
            for (std::size_t i = 0; i < dim; ++i) {
                g[i] += jac[k][i] * r;
                for (std::size_t j = i; j < dim; ++j) a[i][j] += jac[k][i] * jac[k][j];
            }
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < i; ++j) a[i][j] = a[j][i];

        gradient_norm = 0.0;
        for (double gi : g) gradient_norm += gi * gi;
        gradient_norm = std::sqrt(gradient_norm);
        if (gradient_norm <= kGradientTol) break;

        bool accepted = false;
        for (int attempt = 0; attempt < 24 && !accepted; ++attempt) {
            auto damped = a;
            for (std::size_t i = 0; i < dim; ++i)
                damped[i][i] += lambda * std::max(a[i][i], 1e-12);
            std::vector<double> rhs(dim), step;
            for (std::size_t i = 0; i < dim; ++i) rhs[i] = -g[i];
            if (!solve_dense(damped, rhs, step)) {
                lambda = std::min(lambda * 3.0, 1e12);
                continue;
            }
            std::vector<double> trial = x;
            for (std::size_t i = 0; i < dim; ++i) trial[i] += step[i];
            project(family, trial);
            const double trial_sse = sse_of(family, trial, m);
            if (trial_sse < sse) {
                x = std::move(trial);
                sse = trial_sse;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
            } else {
                lambda = std::min(lambda * 3.0, 1e12);
            }
        }
        if (!accepted) break;  // no descent direction left at maximum damping
    }

    FitResult out;
    out.estimate = make_brdf(family, vector_to_params(family, x));
    out.iterations = iterations;
    out.gradient_norm = gradient_norm;
    out.converged = sse == 0.0 || gradient_norm <= kGradientTol;
    return out;
}

}  // namespace

namespace detail {

std::vector<double> fit_predictions(BrdfFamily family,
                                    const std::vector<double> &params,
                                    const MeasurementConfiguration &config) {
    std::vector<double> out(config.size());
    for (std::size_t k = 0; k < config.size(); ++k) {
        const auto &[wi, wr] = config.pair(k);
        out[k] = eval_family(family, params, wi, wr);
    }
    return out;
}

std::vector<std::vector<double>> fit_jacobian(BrdfFamily family,
                                              const std::vector<double> &params,
                                              const MeasurementConfiguration &config) {
    const std::size_t n = config.size();
    std::vector<std::vector<double>> jac(n, std::vector<double>(params.size(), 0.0));

    if (family == BrdfFamily::lambertian) {
        for (std::size_t k = 0; k < n; ++k) jac[k][0] = 1.0 / kPi;
        return jac;
    }

    if (family == BrdfFamily::phong) {
        const double ks = params[1], e = params[2];
        for (std::size_t k = 0; k < n; ++k) {
            const auto &[wi, wr] = config.pair(k);
            const Vec3 vi = to_unit_vector(wi);
            const Vec3 vr = to_unit_vector(wr);
            const double c = std::max(0.0, -vr.x * vi.x - vr.y * vi.y + vr.z * vi.z);
            const double ce = std::pow(c, e);
            jac[k][0] = 1.0 / kPi;
            jac[k][1] = (e + 2.0) / kTwoPi * ce;
            jac[k][2] = c > 0.0 ? ks / kTwoPi * ce * (1.0 + (e + 2.0) * std::log(c)) : 0.0;
        }
        return jac;
    }

    // cook_torrance: central finite differences per parameter.
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(params[j]));
        std::vector<double> lo = params, hi = params;
        lo[j] -= h;
        hi[j] += h;
        const auto plo = fit_predictions(family, lo, config);
        const auto phi = fit_predictions(family, hi, config);
        for (std::size_t k = 0; k < n; ++k) jac[k][j] = (phi[k] - plo[k]) / (2.0 * h);
    }
    return jac;
}

}  // namespace detail

FitResult fit(const Estimator &estimator, const MeasurementSet &measurements) {
    estimator.validate();
    if (measurements.size() < 1)
        throw std::invalid_argument("fit: measurement set is empty");

    switch (estimator.kind) {
        case EstimatorKind::nearest_neighbor:
            return {std::make_shared<TabulatedBrdf>(measurements,
                                                    InterpolationRule::nearest_neighbor),
                    true, 0, 0.0};
        case EstimatorKind::idw:
            return {std::make_shared<TabulatedBrdf>(
                        measurements, InterpolationRule::inverse_distance,
                        estimator.idw_power, estimator.idw_neighbors),
                    true, 0, 0.0};
        case EstimatorKind::parametric_fit: {
            const std::size_t dim =
                family_parameter_names(estimator.fit_family).size();
            if (measurements.size() < dim)
                throw std::invalid_argument(
                    "fit: parametric_fit needs at least as many measurements as free parameters");
            return run_levenberg_marquardt(estimator.fit_family, measurements,
                                           estimator.max_iterations);
        }
    }
    throw std::logic_error("fit: unknown estimator kind");
}

double evaluate_estimate(const BrdfFunction &estimate, const Direction &incoming,
                         const Direction &reflection) {
    return estimate.eval(incoming, reflection);
}

}  // namespace brdfsampler
