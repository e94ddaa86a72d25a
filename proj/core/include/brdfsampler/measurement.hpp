// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brdfsampler/brdf.hpp"
#include "brdfsampler/sampling.hpp"

namespace brdfsampler {

enum class NoiseKind { none, additive_gaussian, relative_gaussian };

std::string noise_kind_name(NoiseKind k);

/// The stochastic part of the measurement process, reduced to a seeded
/// per-sample Gaussian perturbation.
struct NoiseModel {
    NoiseKind kind = NoiseKind::none;
    double sigma = 0.0;
    // Defaults per kind: on for relative noise, off otherwise.
    bool clamp_negative = false;

    static NoiseModel none();
    static NoiseModel additive(double sigma);
    static NoiseModel relative(double sigma);

    void validate() const;
};

struct Provenance {
    std::string source;  // ground-truth identifier or "ingested"
    NoiseModel noise;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

/// A measurement configuration together with one observed value per pair
/// (aligned with the configuration's pair order) and its provenance.
class MeasurementSet {
  public:
    MeasurementSet(MeasurementConfiguration configuration, std::vector<double> values,
                   Provenance provenance);

    const MeasurementConfiguration &configuration() const { return configuration_; }
    const std::vector<double> &values() const { return values_; }
    const Provenance &provenance() const { return provenance_; }
    std::size_t size() const { return values_.size(); }

  private:
    MeasurementConfiguration configuration_;
    std::vector<double> values_;
    Provenance provenance_;
};

/// Applies the noise model to the ground-truth evaluation at every pair of
/// the configuration. Per-pair noise is derived from (seed, pair index), so
/// the result does not depend on evaluation order.
MeasurementSet simulate_measurements(const BrdfFunction &f,
                                     const MeasurementConfiguration &configuration,
                                     const NoiseModel &noise, std::uint64_t seed);

}  // namespace brdfsampler
