// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "brdfsampler/runner.hpp"
#include "brdfsampler/sample_csv.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInvalidInput = 2;

int do_run(const std::string &config_path, const brdfsampler::RunOptions &options) {
    const brdfsampler::RunResult result =
        brdfsampler::run_experiment_file(config_path, options);
    std::cout << "wrote " << result.files_written.size() << " files to "
              << result.output_directory.string() << "\n";
    if (!result.verdict.empty()) std::cout << "verdict: " << result.verdict << "\n";
    return 0;
}

int do_ingest(const std::string &csv_path) {
    const brdfsampler::MeasurementSet m = brdfsampler::ingest(csv_path);
    const auto &config = m.configuration();
    std::cout << "ingested " << m.size() << " measurements\n"
              << "incoming directions: " << config.incoming_count() << "\n"
              << "reflections per incoming:";
    for (std::size_t p = 0; p < config.incoming_count(); ++p)
        std::cout << ' ' << config.reflection_count(p);
    std::cout << "\n";
    double lo = m.values().front(), hi = lo;
    for (double v : m.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::cout << "value range: [" << brdfsampler::format_double(lo) << ", "
              << brdfsampler::format_double(hi) << "]\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sampling-strategy benchmarks for BRDF measurement"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int replicates = 0;

    CLI::App *run = app.add_subcommand("run", "Execute a JSON experiment config");
    run->add_option("config", config_path, "Path to the experiment config")->required();
    CLI::Option *out_opt = run->add_option("--out", out_dir, "Output directory (default ./out)");
    CLI::Option *seed_opt = run->add_option("--seed", seed, "Override the config's master seed");
    CLI::Option *rep_opt =
        run->add_option("--replicates", replicates, "Override the config's replicate count");

    std::string csv_path;
    CLI::App *ingest_cmd = app.add_subcommand("ingest", "Validate and summarize a sample CSV");
    ingest_cmd->add_option("file", csv_path, "Path to a sample CSV")->required();

    CLI::App *strategies_cmd =
        app.add_subcommand("strategies", "List the sampling strategy families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (run->parsed()) {
            brdfsampler::RunOptions options;
            if (*out_opt) options.output_directory = out_dir;
            if (*seed_opt) options.seed = seed;
            if (*rep_opt) options.replicates = replicates;
            return do_run(config_path, options);
        }
        if (ingest_cmd->parsed()) return do_ingest(csv_path);
        if (strategies_cmd->parsed()) {
            std::cout << brdfsampler::list_strategies();
            return 0;
        }
    } catch (const brdfsampler::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const brdfsampler::CsvError &e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
