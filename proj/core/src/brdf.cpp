// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/brdf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "brdfsampler/rng.hpp"

namespace brdfsampler {

namespace {

constexpr double kCosClamp = 1e-9;

std::string format_params(const std::map<std::string, double> &params) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto &[k, v] : params) {
        if (!first) os << ", ";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

}  // namespace

void LambertianParams::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("LambertianParams: rho must lie in [0, 1]");
}

void PhongParams::validate() const {
    if (!(kd >= 0.0) || !(ks >= 0.0))
        throw std::invalid_argument("PhongParams: kd and ks must be >= 0");
    if (kd + ks > 1.0)
        throw std::invalid_argument("PhongParams: kd + ks must be <= 1");
    if (!(exponent >= 0.0))
        throw std::invalid_argument("PhongParams: exponent must be >= 0");
}

void CookTorranceParams::validate() const {
    if (!(kd >= 0.0) || !(ks >= 0.0))
        throw std::invalid_argument("CookTorranceParams: kd and ks must be >= 0");
    if (kd + ks > 1.0)
        throw std::invalid_argument("CookTorranceParams: kd + ks must be <= 1");
    if (!(roughness > 0.0 && roughness <= 1.0))
        throw std::invalid_argument("CookTorranceParams: roughness must lie in (0, 1]");
    if (!(fresnel_f0 >= 0.0 && fresnel_f0 <= 1.0))
        throw std::invalid_argument("CookTorranceParams: fresnel_f0 must lie in [0, 1]");
}

double eval_lambertian(const LambertianParams &p, const Direction &,
                       const Direction &) {
    return p.rho / kPi;
}

double eval_phong(const PhongParams &p, const Direction &wi, const Direction &wr) {
    double lobe = 0.0;
    if (p.ks > 0.0) {
        // cos(alpha) = wr . mirror(wi); the mirror flip is exact in vector form.
        const Vec3 vi = to_unit_vector(wi);
        const Vec3 vr = to_unit_vector(wr);
        const double cos_alpha =
            std::max(0.0, -vr.x * vi.x - vr.y * vi.y + vr.z * vi.z);
        lobe = p.ks * (p.exponent + 2.0) / kTwoPi * std::pow(cos_alpha, p.exponent);
    }
    return p.kd / kPi + lobe;
}

double eval_cook_torrance(const CookTorranceParams &p, const Direction &wi,
                          const Direction &wr) {
    double spec = 0.0;
    if (p.ks > 0.0) {
        const Vec3 vi = to_unit_vector(wi);
        const Vec3 vr = to_unit_vector(wr);
        const double cos_i = std::max(vi.z, kCosClamp);
        const double cos_r = std::max(vr.z, kCosClamp);

        Vec3 h = vi + vr;
        const double hn = norm(h);
        h = hn > 1e-12 ? h / hn : Vec3{0.0, 0.0, 1.0};

        const double cos_h = std::max(h.z, kCosClamp);
        const double tan2_h = (1.0 - cos_h * cos_h) / (cos_h * cos_h);
        const double m2 = p.roughness * p.roughness;
        const double beckmann =
            std::exp(-tan2_h / m2) / (kPi * m2 * cos_h * cos_h * cos_h * cos_h);

        // h.wi == h.wr for unit inputs, so the term is reciprocal by construction.
        const double h_dot_r = std::max(dot(h, vr), kCosClamp);
        const double geom = std::min(
            1.0, std::min(2.0 * cos_h * cos_r / h_dot_r, 2.0 * cos_h * cos_i / h_dot_r));
        const double fresnel =
            p.fresnel_f0 + (1.0 - p.fresnel_f0) * std::pow(1.0 - h_dot_r, 5.0);

        spec = p.ks * beckmann * geom * fresnel / (4.0 * cos_i * cos_r);
    }
    return p.kd / kPi + spec;
}

namespace {

class LambertianBrdf final : public BrdfFunction {
  public:
    explicit LambertianBrdf(const LambertianParams &p) : p_(p) { p_.validate(); }
    double eval(const Direction &wi, const Direction &wr) const override {
        return eval_lambertian(p_, wi, wr);
    }
    std::string identifier() const override {
        return "lambertian(" + format_params(parameters()) + ")";
    }
    std::map<std::string, double> parameters() const override {
        return {{"rho", p_.rho}};
    }

  private:
    LambertianParams p_;
};

class PhongBrdf final : public BrdfFunction {
  public:
    explicit PhongBrdf(const PhongParams &p) : p_(p) { p_.validate(); }
    double eval(const Direction &wi, const Direction &wr) const override {
        return eval_phong(p_, wi, wr);
    }
    std::string identifier() const override {
        return "phong(" + format_params(parameters()) + ")";
    }
    std::map<std::string, double> parameters() const override {
        return {{"kd", p_.kd}, {"ks", p_.ks}, {"exponent", p_.exponent}};
    }

  private:
    PhongParams p_;
};

class CookTorranceBrdf final : public BrdfFunction {
  public:
    explicit CookTorranceBrdf(const CookTorranceParams &p) : p_(p) { p_.validate(); }
    double eval(const Direction &wi, const Direction &wr) const override {
        return eval_cook_torrance(p_, wi, wr);
    }
    std::string identifier() const override {
        return "cook_torrance(" + format_params(parameters()) + ")";
    }
    std::map<std::string, double> parameters() const override {
        return {{"kd", p_.kd},
                {"ks", p_.ks},
                {"roughness", p_.roughness},
                {"fresnel_f0", p_.fresnel_f0}};
    }

  private:
    CookTorranceParams p_;
};

}  // namespace

BrdfPtr make_lambertian(const LambertianParams &p) {
    return std::make_shared<LambertianBrdf>(p);
}

BrdfPtr make_phong(const PhongParams &p) { return std::make_shared<PhongBrdf>(p); }

BrdfPtr make_cook_torrance(const CookTorranceParams &p) {
    return std::make_shared<CookTorranceBrdf>(p);
}

std::string family_name(BrdfFamily f) {
    switch (f) {
        case BrdfFamily::lambertian: return "lambertian";
        case BrdfFamily::phong: return "phong";
        case BrdfFamily::cook_torrance: return "cook_torrance";
    }
    throw std::logic_error("family_name: unknown family");
}

const std::vector<std::string> &family_parameter_names(BrdfFamily f) {
    static const std::vector<std::string> lambertian{"rho"};
    static const std::vector<std::string> phong{"kd", "ks", "exponent"};
    static const std::vector<std::string> ct{"kd", "ks", "roughness", "fresnel_f0"};
    switch (f) {
        case BrdfFamily::lambertian: return lambertian;
        case BrdfFamily::phong: return phong;
        case BrdfFamily::cook_torrance: return ct;
    }
    throw std::logic_error("family_parameter_names: unknown family");
}

BrdfPtr make_brdf(BrdfFamily f, const std::map<std::string, double> &params) {
    auto get = [&](const std::string &name, double fallback) {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    };
    switch (f) {
        case BrdfFamily::lambertian:
            return make_lambertian({get("rho", 0.5)});
        case BrdfFamily::phong:
            return make_phong({get("kd", 0.0), get("ks", 0.0), get("exponent", 1.0)});
        case BrdfFamily::cook_torrance:
            return make_cook_torrance({get("kd", 0.0), get("ks", 0.0),
                                       get("roughness", 0.3), get("fresnel_f0", 1.0)});
    }
    throw std::logic_error("make_brdf: unknown family");
}

void BrdfClass::validate() const {
    const auto &names = family_parameter_names(family);
    if (ranges.size() != names.size())
        throw std::invalid_argument("BrdfClass: ranges must cover exactly the family parameters");
    for (const auto &name : names) {
        auto it = ranges.find(name);
        if (it == ranges.end())
            throw std::invalid_argument("BrdfClass: missing range for parameter \"" + name + "\"");
        if (!(it->second.lo <= it->second.hi))
            throw std::invalid_argument("BrdfClass: empty range for parameter \"" + name + "\"");
    }
    // The envelope (all corners) must satisfy the family invariants; with
    // independent uniforms this guarantees every draw is valid.
    std::map<std::string, double> lo_corner, hi_corner;
    for (const auto &[k, r] : ranges) {
        lo_corner[k] = r.lo;
        hi_corner[k] = r.hi;
    }
    make_brdf(family, lo_corner);
    make_brdf(family, hi_corner);
    if (family == BrdfFamily::phong || family == BrdfFamily::cook_torrance) {
        std::map<std::string, double> worst = lo_corner;
        worst["kd"] = ranges.at("kd").hi;
        worst["ks"] = ranges.at("ks").hi;
        make_brdf(family, worst);  // throws when hi(kd) + hi(ks) > 1
    }
}

std::vector<BrdfPtr> draw_from_class(const BrdfClass &cls, int count) {
    if (count < 1)
        throw std::invalid_argument("draw_from_class: count must be >= 1");
    cls.validate();
    const auto &names = family_parameter_names(cls.family);
    std::vector<BrdfPtr> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        rng::Sequence seq(rng::derive(cls.seed, static_cast<std::uint64_t>(k)));
        std::map<std::string, double> params;
        for (const auto &name : names) {
            const ParameterRange r = cls.ranges.at(name);
            params[name] = r.lo + (r.hi - r.lo) * seq.next_double();
        }
        out.push_back(make_brdf(cls.family, params));
    }
    return out;
}

double directional_hemispherical_reflectance(const BrdfFunction &f,
                                             const Direction &incoming,
                                             const QuadratureSpec &quad) {
    const std::vector<HemisphereNode> nodes = hemisphere_nodes(quad);
    std::vector<double> terms(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const HemisphereNode &nd = nodes[k];
        terms[k] = nd.weight * f.eval(incoming, nd.dir) * std::cos(nd.dir.theta());
    }
    return pairwise_sum(terms);
}

}  // namespace brdfsampler
