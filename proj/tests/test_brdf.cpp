// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "brdfsampler/brdf.hpp"
#include "brdfsampler/rng.hpp"

using namespace brdfsampler;

namespace {

Direction random_direction(rng::Sequence &seq) {
    return Direction(kHalfPi * seq.next_double(), kTwoPi * seq.next_double());
}

}  // namespace

TEST_CASE("lambertian evaluation") {
    const Direction a(0.3, 1.0), b(1.2, 4.0);
    CHECK(eval_lambertian({0.5}, a, b) == doctest::Approx(0.5 / kPi).epsilon(1e-15));
    CHECK(eval_lambertian({0.0}, a, b) == 0.0);
    CHECK(eval_lambertian({1.0}, a, b) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
    CHECK_THROWS_AS(make_lambertian({1.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_lambertian({-0.1}), std::invalid_argument);
}

TEST_CASE("phong evaluation") {
    const Direction wi(kPi / 4.0, 0.0);
    // Lobe peak at the mirror direction: (n_s + 2) / (2*pi).
    CHECK(eval_phong({0.0, 1.0, 10.0}, wi, mirror_reflect(wi)) ==
          doctest::Approx(12.0 / kTwoPi).epsilon(1e-12));
    // Diffuse-only limit.
    rng::Sequence seq(3);
    for (int i = 0; i < 100; ++i) {
        const Direction a = random_direction(seq), b = random_direction(seq);
        CHECK(eval_phong({0.5, 0.0, 10.0}, a, b) == eval_lambertian({0.5}, a, b));
    }
    // At 90 degrees off the mirror direction the lobe vanishes; the double
    // pi/2 leaves cos(alpha) ~ 6e-17, so the lobe is zero only to ~1e-162.
    const Direction normal(0.0, 0.0);
    CHECK(eval_phong({0.0, 1.0, 10.0}, normal, Direction(kHalfPi, 0.0)) <= 1e-100);
    // Beyond 90 degrees the clamp makes it exactly zero.
    CHECK(eval_phong({0.0, 1.0, 10.0}, Direction(kPi / 4.0, 0.0),
                     Direction(0.45 * kPi, 0.0)) == 0.0);
    CHECK_THROWS_AS(make_phong({0.6, 0.5, 10.0}), std::invalid_argument);
}

TEST_CASE("cook-torrance evaluation") {
    const Direction normal(0.0, 0.0);
    // Normal incidence: D(0)/4 = 1/(4*pi*m^2) with G = F = 1.
    CHECK(eval_cook_torrance({0.0, 1.0, 0.3, 1.0}, normal, normal) ==
          doctest::Approx(1.0 / (4.0 * kPi * 0.09)).epsilon(1e-12));
    // Independent scalar recomputation of D*G*F/(4 cos cos) at 45-degree
    // mirror reflection.
    const Direction wi(kPi / 4.0, 0.0);
    CHECK(eval_cook_torrance({0.0, 1.0, 0.3, 1.0}, wi, mirror_reflect(wi)) ==
          doctest::Approx(1.7683882565766145).epsilon(1e-9));
    // Diffuse-only limit.
    rng::Sequence seq(4);
    for (int i = 0; i < 100; ++i) {
        const Direction a = random_direction(seq), b = random_direction(seq);
        CHECK(eval_cook_torrance({0.5, 0.0, 0.3, 0.5}, a, b) ==
              eval_lambertian({0.5}, a, b));
    }
    // Grazing configurations stay finite.
    const Direction grazing(kHalfPi, 0.0);
    const double v = eval_cook_torrance({0.0, 1.0, 0.3, 1.0}, grazing,
                                        mirror_reflect(grazing));
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK_THROWS_AS(make_cook_torrance({0.0, 1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_cook_torrance({0.0, 1.0, 0.3, 1.5}), std::invalid_argument);
}

TEST_CASE("reciprocity and nonnegativity on seeded pairs") {
    const BrdfPtr models[] = {make_lambertian({0.7}),
                              make_phong({0.2, 0.5, 20.0}),
                              make_cook_torrance({0.3, 0.6, 0.3, 0.9})};
    rng::Sequence seq(1234);
    for (int i = 0; i < 1000; ++i) {
        const Direction a = random_direction(seq), b = random_direction(seq);
        for (const BrdfPtr &m : models) {
            const double fab = m->eval(a, b);
            const double fba = m->eval(b, a);
            CHECK(fab >= 0.0);
            CHECK(std::abs(fab - fba) <= 1e-9 * (1.0 + std::abs(fab)));
        }
    }
}

TEST_CASE("directional-hemispherical reflectance") {
    const QuadratureSpec quad{QuadratureRule::product_gauss, 32, 0, false};
    const Direction wi(0.9, 1.0);
    CHECK(directional_hemispherical_reflectance(*make_lambertian({0.7}), wi, quad) ==
          doctest::Approx(0.7).epsilon(1e-3));
    CHECK(directional_hemispherical_reflectance(*make_lambertian({0.0}), wi, quad) == 0.0);
    CHECK(directional_hemispherical_reflectance(*make_phong({0.2, 0.0, 5.0}), wi, quad) ==
          doctest::Approx(0.2).epsilon(1e-3));
    // Deterministic for a fixed spec.
    const QuadratureSpec mc{QuadratureRule::monte_carlo, 20000, 9, false};
    const double r1 = directional_hemispherical_reflectance(*make_lambertian({0.7}),
                                                            wi, mc);
    const double r2 = directional_hemispherical_reflectance(*make_lambertian({0.7}),
                                                            wi, mc);
    CHECK(r1 == r2);
    CHECK(r1 == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("white furnace bound for admissible parameters") {
    const QuadratureSpec quad{QuadratureRule::product_gauss, 32, 0, false};
    const BrdfPtr models[] = {
        make_lambertian({1.0}),       make_lambertian({0.35}),
        make_phong({0.0, 1.0, 1.0}),  make_phong({0.0, 1.0, 50.0}),
        make_phong({0.3, 0.7, 8.0}),  make_phong({0.5, 0.5, 200.0}),
    };
    rng::Sequence seq(77);
    for (int i = 0; i < 20; ++i) {
        const Direction wi = random_direction(seq);
        for (const BrdfPtr &m : models)
            CHECK(directional_hemispherical_reflectance(*m, wi, quad) <= 1.0 + 2e-3);
    }
}

TEST_CASE("draw_from_class") {
    BrdfClass degenerate{BrdfFamily::lambertian, {{"rho", {0.5, 0.5}}}, 11};
    const auto same = draw_from_class(degenerate, 3);
    REQUIRE(same.size() == 3);
    for (const BrdfPtr &m : same) CHECK(m->parameters().at("rho") == 0.5);

    CHECK_THROWS_AS(draw_from_class(degenerate, 0), std::invalid_argument);

    BrdfClass uniform{BrdfFamily::lambertian, {{"rho", {0.0, 1.0}}}, 42};
    const auto draws = draw_from_class(uniform, 100);
    double mean = 0.0;
    for (const BrdfPtr &m : draws) mean += m->parameters().at("rho");
    mean /= 100.0;
    CHECK(std::abs(mean - 0.5) < 0.1);

    // Identical seeds give identical sequences.
    const auto again = draw_from_class(uniform, 100);
    for (std::size_t i = 0; i < draws.size(); ++i)
        CHECK(draws[i]->parameters().at("rho") == again[i]->parameters().at("rho"));

    // A range envelope breaking kd + ks <= 1 is rejected.
    BrdfClass bad{BrdfFamily::phong,
                  {{"kd", {0.0, 0.8}}, {"ks", {0.0, 0.5}}, {"exponent", {1.0, 10.0}}},
                  0};
    CHECK_THROWS_AS(draw_from_class(bad, 2), std::invalid_argument);

    // Missing parameter range is rejected.
    BrdfClass incomplete{BrdfFamily::phong, {{"kd", {0.0, 0.2}}}, 0};
    CHECK_THROWS_AS(incomplete.validate(), std::invalid_argument);
}
