// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace brdfsampler {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3 &a, const Vec3 &b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

/// A direction on the upper unit hemisphere, stored as (theta, phi) in
/// radians with theta in [0, pi/2] and phi canonicalized to [0, 2*pi).
/// The surface normal is theta = 0; a polar direction canonicalizes phi to 0.
class Direction {
  public:
    Direction() = default;
    Direction(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

    bool operator==(const Direction &o) const {
        return theta_ == o.theta_ && phi_ == o.phi_;
    }
    bool operator!=(const Direction &o) const { return !(*this == o); }

  private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)); unit norm.
Vec3 to_unit_vector(const Direction &d);

/// Inverse of to_unit_vector. Rejects non-unit vectors (|v| off by more than
/// 1e-9) and vectors below the hemisphere (v.z < -1e-12); v.z is clamped to
/// [0, 1] before the polar angle is recovered.
Direction from_unit_vector(const Vec3 &v);

/// Great-circle angle between two directions, in [0, pi]. Exactly zero for
/// equal canonical directions.
double angular_distance(const Direction &a, const Direction &b);

/// Reflection about the surface normal: (theta, phi) -> (theta, phi + pi mod 2*pi).
Direction mirror_reflect(const Direction &d);

/// Direction of the normalized vector sum of the two unit vectors.
/// Rejects inputs whose sum has norm below 1e-9.
Direction halfway(const Direction &a, const Direction &b);

/// Product metric on (incoming, reflection) pairs:
/// sqrt(angular_distance(ai, bi)^2 + angular_distance(ar, br)^2).
double pair_angular_distance(const Direction &ai, const Direction &ar,
                             const Direction &bi, const Direction &br);

}  // namespace brdfsampler
