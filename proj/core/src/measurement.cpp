// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/measurement.hpp"

#include <algorithm>
#include <stdexcept>

#include "brdfsampler/rng.hpp"

namespace brdfsampler {

std::string noise_kind_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::none: return "none";
        case NoiseKind::additive_gaussian: return "additive_gaussian";
        case NoiseKind::relative_gaussian: return "relative_gaussian";
    }
    throw std::logic_error("noise_kind_name: unknown kind");
}

NoiseModel NoiseModel::none() { return {NoiseKind::none, 0.0, false}; }

NoiseModel NoiseModel::additive(double sigma) {
    return {NoiseKind::additive_gaussian, sigma, false};
}

NoiseModel NoiseModel::relative(double sigma) {
    return {NoiseKind::relative_gaussian, sigma, true};
}

void NoiseModel::validate() const {
    if (!(sigma >= 0.0))
        throw std::invalid_argument("NoiseModel: sigma must be >= 0");
}

MeasurementSet::MeasurementSet(MeasurementConfiguration configuration,
                               std::vector<double> values, Provenance provenance)
    : configuration_(std::move(configuration)),
      values_(std::move(values)),
      provenance_(std::move(provenance)) {
    if (values_.size() != configuration_.size())
        throw std::invalid_argument("MeasurementSet: one value per configuration pair required");
    if (provenance_.noise.clamp_negative)
        for (double v : values_)
            if (v < 0.0)
                throw std::invalid_argument("MeasurementSet: negative value with clamp_negative set");
}

MeasurementSet simulate_measurements(const BrdfFunction &f,
                                     const MeasurementConfiguration &configuration,
                                     const NoiseModel &noise, std::uint64_t seed) {
    noise.validate();
    std::vector<double> values(configuration.size());
    for (std::size_t k = 0; k < configuration.size(); ++k) {
        const auto &[wi, wr] = configuration.pair(k);
        double v = f.eval(wi, wr);
        if (noise.kind != NoiseKind::none && noise.sigma > 0.0) {
            rng::Sequence seq(rng::derive(seed, k));
            const double eps = noise.sigma * seq.next_gaussian();
            v = noise.kind == NoiseKind::additive_gaussian ? v + eps : v * (1.0 + eps);
        }
        if (noise.clamp_negative) v = std::max(0.0, v);
        values[k] = v;
    }
    return MeasurementSet(configuration, std::move(values),
                          Provenance{f.identifier(), noise, seed, rng::kAlgorithmId});
}

}  // namespace brdfsampler
