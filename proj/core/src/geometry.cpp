// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace brdfsampler {

Direction::Direction(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("Direction: angles must be finite");
    if (theta < 0.0 || theta > kHalfPi)
        throw std::invalid_argument("Direction: theta outside [0, pi/2]");
    theta_ = theta;
    if (theta_ == 0.0) {
        phi_ = 0.0;
        return;
    }
    phi_ = std::fmod(phi, kTwoPi);
    if (phi_ < 0.0) phi_ += kTwoPi;
    if (phi_ >= kTwoPi) phi_ = 0.0;  // fmod plus wrap can round up to 2*pi
}

Vec3 to_unit_vector(const Direction &d) {
    const double st = std::sin(d.theta());
    return {st * std::cos(d.phi()), st * std::sin(d.phi()), std::cos(d.theta())};
}

Direction from_unit_vector(const Vec3 &v) {
    const double n = norm(v);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("from_unit_vector: input is not a unit vector");
    if (v.z < -1e-12)
        throw std::invalid_argument("from_unit_vector: direction below the hemisphere");
    const double z = std::clamp(v.z, 0.0, 1.0);
    // atan2(r, z) recovers theta with uniform accuracy; acos(z) loses digits
    // near the pole.
    const double theta = std::atan2(std::hypot(v.x, v.y), z);
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0) phi += kTwoPi;
    return Direction(std::min(theta, kHalfPi), phi);
}

double angular_distance(const Direction &a, const Direction &b) {
    if (a == b) return 0.0;
    const Vec3 u = to_unit_vector(a);
    const Vec3 v = to_unit_vector(b);
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

Direction mirror_reflect(const Direction &d) {
    if (d.theta() == 0.0) return d;
    // The downward branch is exact (Sterbenz); the upward branch rounds once.
    const double phi = d.phi() >= kPi ? d.phi() - kPi : d.phi() + kPi;
    return Direction(d.theta(), phi);
}

Direction halfway(const Direction &a, const Direction &b) {
    const Vec3 s = to_unit_vector(a) + to_unit_vector(b);
    const double n = norm(s);
    if (n < 1e-9)
        throw std::invalid_argument("halfway: vector sum is numerically zero");
    return from_unit_vector(s / n);
}

double pair_angular_distance(const Direction &ai, const Direction &ar,
                             const Direction &bi, const Direction &br) {
    const double di = angular_distance(ai, bi);
    const double dr = angular_distance(ar, br);
    return std::sqrt(di * di + dr * dr);
}

}  // namespace brdfsampler
