// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "brdfsampler/measurement.hpp"

namespace brdfsampler {

/// Malformed sample CSV input; carries the 1-based offending line.
class CsvError : public std::runtime_error {
  public:
    CsvError(std::size_t line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Writes `theta_i,phi_i,theta_r,phi_r,value` rows in configuration order.
/// The formatting round-trips exactly, so serialize/ingest is lossless.
void write_sample_csv(std::ostream &os, const MeasurementSet &m);
std::string sample_csv_string(const MeasurementSet &m);

/// Parses a sample CSV into a measurement set with provenance "ingested".
/// Rows group by exact (theta_i, phi_i) in first-appearance order. Rejects
/// malformed rows, out-of-range angles and duplicate pairs, reporting the
/// offending line.
MeasurementSet read_sample_csv(std::istream &is);
MeasurementSet read_sample_csv_string(const std::string &content);

}  // namespace brdfsampler
