// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "brdfsampler/geometry.hpp"
#include "brdfsampler/quadrature.hpp"

namespace brdfsampler {

/// A single-channel 4D BRDF: nonnegative, Helmholtz-reciprocal for the
/// analytic models, evaluatable at any (incoming, reflection) pair.
/// Values are in 1/steradian. Immutable after construction; eval is pure
/// and safe to call concurrently.
class BrdfFunction {
  public:
    virtual ~BrdfFunction() = default;

    virtual double eval(const Direction &incoming,
                        const Direction &reflection) const = 0;

    /// Descriptive identifier, e.g. "phong(kd=0.2, ks=0.5, exponent=20)".
    virtual std::string identifier() const = 0;

    virtual std::map<std::string, double> parameters() const = 0;
};

using BrdfPtr = std::shared_ptr<const BrdfFunction>;

struct LambertianParams {
    double rho = 0.5;  // albedo in [0, 1]
    void validate() const;
};

struct PhongParams {
    double kd = 0.0;
    double ks = 0.0;
    double exponent = 1.0;  // n_s >= 0
    void validate() const;  // kd, ks >= 0 and kd + ks <= 1
};

struct CookTorranceParams {
    double kd = 0.0;
    double ks = 0.0;
    double roughness = 0.3;    // Beckmann m in (0, 1]
    double fresnel_f0 = 1.0;   // Schlick F0 in [0, 1]
    void validate() const;
};

double eval_lambertian(const LambertianParams &p, const Direction &wi,
                       const Direction &wr);

/// Energy-normalized Phong:
///   kd/pi + ks * (n_s + 2) / (2*pi) * max(0, cos(alpha))^n_s,
/// alpha the angle between the reflection and the mirrored incoming direction.
double eval_phong(const PhongParams &p, const Direction &wi, const Direction &wr);

/// Cook-Torrance with Beckmann distribution, Torrance-Sparrow geometry term
/// and Schlick Fresnel:
///   kd/pi + ks * D * G * F / (4 cos(theta_i) cos(theta_r)).
/// Denominators are clamped below at 1e-9, so evaluation is total and finite
/// at grazing configurations.
double eval_cook_torrance(const CookTorranceParams &p, const Direction &wi,
                          const Direction &wr);

BrdfPtr make_lambertian(const LambertianParams &p);
BrdfPtr make_phong(const PhongParams &p);
BrdfPtr make_cook_torrance(const CookTorranceParams &p);

enum class BrdfFamily { lambertian, phong, cook_torrance };

std::string family_name(BrdfFamily f);

/// Canonical parameter names of a family, in draw order.
const std::vector<std::string> &family_parameter_names(BrdfFamily f);

/// Builds a family member from a full parameter record; validates.
BrdfPtr make_brdf(BrdfFamily f, const std::map<std::string, double> &params);

struct ParameterRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// A family plus independent uniform ranges per parameter and a seed.
/// The range envelope must satisfy the family invariants, so every draw does.
struct BrdfClass {
    BrdfFamily family = BrdfFamily::lambertian;
    std::map<std::string, ParameterRange> ranges;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Draws count >= 1 parameter vectors with the seeded generator; the same
/// seed yields the identical sequence.
std::vector<BrdfPtr> draw_from_class(const BrdfClass &cls, int count);

/// White-furnace quantity: integral of f(wi, wr) cos(theta_r) over the
/// reflection hemisphere, approximated with the given quadrature.
/// At most 1 for energy-preserving surfaces.
double directional_hemispherical_reflectance(const BrdfFunction &f,
                                             const Direction &incoming,
                                             const QuadratureSpec &quad);

}  // namespace brdfsampler
