// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include "brdfsampler/brdf.hpp"
#include "brdfsampler/measurement.hpp"

namespace brdfsampler {

enum class InterpolationRule { nearest_neighbor, inverse_distance };

/// A BRDF backed by a measurement set; evaluation interpolates the stored
/// values under the 4D product metric on (incoming, reflection) pairs.
///
/// nearest_neighbor returns the value of the closest sample (lowest index on
/// ties). inverse_distance averages the k nearest samples with weights
/// 1/(d^q + 1e-12) and returns the stored value exactly when a sample lies
/// within 1e-12 of the query. Either rule reproduces stored values at the
/// sample pairs exactly.
class TabulatedBrdf final : public BrdfFunction {
  public:
    TabulatedBrdf(MeasurementSet data, InterpolationRule rule, double idw_power = 2.0,
                  int idw_neighbors = 16);

    double eval(const Direction &incoming, const Direction &reflection) const override;
    std::string identifier() const override;
    std::map<std::string, double> parameters() const override;

    const MeasurementSet &data() const { return data_; }
    InterpolationRule rule() const { return rule_; }

  private:
    MeasurementSet data_;
    InterpolationRule rule_;
    double idw_power_;
    int idw_neighbors_;
    std::vector<Vec3> incoming_vecs_, reflection_vecs_;  // per sample pair
};

}  // namespace brdfsampler
