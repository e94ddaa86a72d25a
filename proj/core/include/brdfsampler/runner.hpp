// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brdfsampler/efficiency.hpp"

namespace brdfsampler {

/// Invalid experiment configuration (schema violation, unknown key, bad
/// value). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RunMode { curve, compare, select };

std::string run_mode_name(RunMode m);

/// A parsed experiment configuration: the plan plus output options.
struct ExperimentConfig {
    ExperimentPlan plan;
    RunMode mode = RunMode::compare;
    std::filesystem::path output_directory = "./out";
    bool emit_json = true;
    bool emit_csv = true;
};

/// Parses and schema-validates a JSON experiment config. Unknown keys are
/// rejected with a message naming the key; value errors name the offending
/// location. Throws ConfigError.
ExperimentConfig parse_experiment_config(const std::string &json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

struct RunOptions {
    std::optional<std::filesystem::path> output_directory;  // --out
    std::optional<std::uint64_t> seed;                      // --seed
    std::optional<int> replicates;                          // --replicates
};

struct RunResult {
    std::filesystem::path output_directory;
    std::vector<std::filesystem::path> files_written;
    std::string verdict;  // empty unless compare mode
};

/// Executes a config end to end: admissibility checks, error curves, the
/// comparison or selection, and the report files (report.json, curves.csv
/// and one points_<strategy>_<n>.csv per strategy and budget).
RunResult run_experiment(const ExperimentConfig &config, const RunOptions &options = {});
RunResult run_experiment_file(const std::filesystem::path &config_path,
                              const RunOptions &options = {});

/// Reads a sample CSV from disk (CLI `ingest`); throws CsvError on malformed
/// input with the offending line number.
MeasurementSet ingest(const std::filesystem::path &csv_path);

/// Human-readable listing of the strategy families and their parameters.
std::string list_strategies();

}  // namespace brdfsampler
