// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/tabulated.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brdfsampler {

namespace {

double vec_angle(const Vec3 &u, const Vec3 &v) {
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

constexpr double kExactHit = 1e-12;

}  // namespace

TabulatedBrdf::TabulatedBrdf(MeasurementSet data, InterpolationRule rule,
                             double idw_power, int idw_neighbors)
    : data_(std::move(data)),
      rule_(rule),
      idw_power_(idw_power),
      idw_neighbors_(idw_neighbors) {
    if (!(idw_power_ > 0.0))
        throw std::invalid_argument("TabulatedBrdf: idw power must be > 0");
    if (idw_neighbors_ < 1)
        throw std::invalid_argument("TabulatedBrdf: idw neighbor count must be >= 1");
    incoming_vecs_.reserve(data_.size());
    reflection_vecs_.reserve(data_.size());
    for (const auto &[wi, wr] : data_.configuration().pairs()) {
        incoming_vecs_.push_back(to_unit_vector(wi));
        reflection_vecs_.push_back(to_unit_vector(wr));
    }
}

double TabulatedBrdf::eval(const Direction &incoming,
                           const Direction &reflection) const {
    const Vec3 qi = to_unit_vector(incoming);
    const Vec3 qr = to_unit_vector(reflection);
    const std::size_t n = data_.size();
    const std::vector<double> &values = data_.values();

    if (rule_ == InterpolationRule::nearest_neighbor) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const double di = vec_angle(qi, incoming_vecs_[k]);
            const double dr = vec_angle(qr, reflection_vecs_[k]);
            const double d = std::sqrt(di * di + dr * dr);
            if (d < best_d) {  // ties keep the lowest index
                best_d = d;
                best = k;
            }
        }
        return values[best];
    }

    const std::size_t kn = std::min<std::size_t>(idw_neighbors_, n);
    std::vector<std::pair<double, std::size_t>> dists(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double di = vec_angle(qi, incoming_vecs_[k]);
        const double dr = vec_angle(qr, reflection_vecs_[k]);
        dists[k] = {std::sqrt(di * di + dr * dr), k};
    }
    std::partial_sort(dists.begin(), dists.begin() + kn, dists.end());
    if (dists[0].first < kExactHit) return values[dists[0].second];
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < kn; ++j) {
        const double w = 1.0 / (std::pow(dists[j].first, idw_power_) + 1e-12);
        num += w * values[dists[j].second];
        den += w;
    }
    return num / den;
}

std::string TabulatedBrdf::identifier() const {
    const char *rule = rule_ == InterpolationRule::nearest_neighbor
                           ? "nearest_neighbor"
                           : "inverse_distance";
    return std::string("tabulated(") + rule + ", n=" + std::to_string(data_.size()) + ")";
}

std::map<std::string, double> TabulatedBrdf::parameters() const {
    std::map<std::string, double> out{{"n", static_cast<double>(data_.size())}};
    if (rule_ == InterpolationRule::inverse_distance) {
        out["power"] = idw_power_;
        out["neighbors"] = static_cast<double>(idw_neighbors_);
    }
    return out;
}

}  // namespace brdfsampler
