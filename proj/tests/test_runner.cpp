// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "brdfsampler/runner.hpp"
#include "brdfsampler/sample_csv.hpp"

using namespace brdfsampler;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name)
        : path(fs::temp_directory_path() / ("brdfsampler_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char *kMinimalConfig = R"({
  "brdf": {"family": "lambertian", "params": {"rho": 0.5}},
  "strategies": [{"family": "uniform_sphere", "seed": 1}],
  "budgets": [16]
})";

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const ExperimentConfig cfg = parse_experiment_config(kMinimalConfig);
    CHECK(cfg.mode == RunMode::curve);
    CHECK(cfg.plan.strategies.size() == 1);
    CHECK(cfg.plan.strategies[0].label() == "uniform_sphere");
    CHECK(cfg.plan.estimator.kind == EstimatorKind::nearest_neighbor);
    CHECK(cfg.plan.noise.kind == NoiseKind::none);
    CHECK(cfg.emit_json);
    CHECK(cfg.emit_csv);
}

TEST_CASE("unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_experiment_config(R"({"stratgy": 1})"),
                         doctest::Contains("stratgy"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_experiment_config(
            R"({"brdf": {"family": "lambertian", "colour": 1},
                "strategies": [{"family": "uniform_sphere"}], "budgets": [4]})"),
        doctest::Contains("colour"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_experiment_config(
            R"({"brdf": {"family": "lambertian"},
                "strategies": [{"family": "uniform_sphere", "params": {"variance": 1}}],
                "budgets": [4]})"),
        doctest::Contains("variance"), ConfigError);
}

TEST_CASE("config structural validation") {
    // Exactly one ground-truth form.
    CHECK_THROWS_AS(parse_experiment_config(
                        R"({"strategies": [{"family": "uniform_sphere"}], "budgets": [4]})"),
                    ConfigError);
    // Compare mode needs two strategies.
    CHECK_THROWS_AS(parse_experiment_config(
                        R"({"brdf": {"family": "lambertian"}, "mode": "compare",
                            "strategies": [{"family": "uniform_sphere"}], "budgets": [4]})"),
                    ConfigError);
    // Budgets must ascend.
    CHECK_THROWS_AS(parse_experiment_config(
                        R"({"brdf": {"family": "lambertian"},
                            "strategies": [{"family": "uniform_sphere"}],
                            "budgets": [16, 8]})"),
                    ConfigError);
    // Malformed JSON.
    CHECK_THROWS_AS(parse_experiment_config("{"), ConfigError);
    // Unknown family.
    CHECK_THROWS_AS(parse_experiment_config(
                        R"({"brdf": {"family": "mirror"},
                            "strategies": [{"family": "uniform_sphere"}], "budgets": [4]})"),
                    ConfigError);
}

TEST_CASE("duplicate strategy labels are uniquified") {
    const ExperimentConfig cfg = parse_experiment_config(R"({
        "brdf": {"family": "lambertian"},
        "strategies": [{"family": "uniform_sphere"}, {"family": "uniform_sphere"}],
        "budgets": [4]})");
    CHECK(cfg.plan.strategies[0].label() != cfg.plan.strategies[1].label());
}

TEST_CASE("run writes the three report files") {
    TempDir dir("minimal");
    RunOptions options;
    options.output_directory = dir.path;
    const RunResult res = run_experiment(parse_experiment_config(kMinimalConfig), options);
    CHECK(res.files_written.size() == 3);
    CHECK(fs::exists(dir.path / "report.json"));
    CHECK(fs::exists(dir.path / "curves.csv"));
    CHECK(fs::exists(dir.path / "points_uniform_sphere_16.csv"));

    // Every emitted points CSV re-parses.
    const MeasurementSet m = ingest(dir.path / "points_uniform_sphere_16.csv");
    CHECK(m.size() == 16);
    CHECK(m.provenance().source == "ingested");
}

TEST_CASE("self-comparison is inconclusive with a unit ratio column") {
    const char *config = R"({
      "brdf": {"family": "phong", "params": {"kd": 0.2, "ks": 0.6, "exponent": 8}},
      "strategies": [{"family": "uniform_sphere", "seed": 3},
                     {"family": "uniform_sphere", "seed": 3}],
      "estimator": {"kind": "idw"},
      "dist": {"p": 2, "quadrature": {"rule": "product_gauss", "node_count": 6}},
      "budgets": [16, 32, 64]
    })";
    TempDir dir("selfcmp");
    RunOptions options;
    options.output_directory = dir.path;
    const RunResult res = run_experiment(parse_experiment_config(config), options);
    CHECK(res.verdict == "inconclusive");

    std::istringstream csv(slurp(dir.path / "curves.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "budget,n1,error1,n2,error2,ratio,excluded");
    while (std::getline(csv, line)) {
        // ratio is the second-to-last field and must be exactly 1.
        const auto last_comma = line.rfind(',');
        const auto prev_comma = line.rfind(',', last_comma - 1);
        CHECK(line.substr(prev_comma + 1, last_comma - prev_comma - 1) == "1");
        CHECK(line.substr(last_comma + 1) == "0");
    }
}

TEST_CASE("two runs are byte identical") {
    const char *config = R"({
      "brdf": {"family": "cook_torrance",
               "params": {"kd": 0.3, "ks": 0.6, "roughness": 0.3, "fresnel_f0": 0.9}},
      "strategies": [{"family": "uniform_sphere", "seed": 1},
                     {"family": "equispaced_grid"}],
      "estimator": {"kind": "idw"},
      "dist": {"p": 1, "quadrature": {"rule": "monte_carlo", "node_count": 1024, "seed": 5}},
      "noise": {"kind": "relative_gaussian", "sigma": 0.02},
      "budgets": [16, 64],
      "seed": 99
    })";
    TempDir dir1("det1"), dir2("det2");
    RunOptions o1, o2;
    o1.output_directory = dir1.path;
    o2.output_directory = dir2.path;
    run_experiment(parse_experiment_config(config), o1);
    run_experiment(parse_experiment_config(config), o2);
    CHECK(slurp(dir1.path / "report.json") == slurp(dir2.path / "report.json"));
    CHECK(slurp(dir1.path / "curves.csv") == slurp(dir2.path / "curves.csv"));
}

TEST_CASE("cli overrides take precedence") {
    TempDir dir("override");
    RunOptions options;
    options.output_directory = dir.path;
    options.seed = 1234;
    const RunResult res = run_experiment(parse_experiment_config(kMinimalConfig), options);
    const std::string report = slurp(res.output_directory / "report.json");
    CHECK(report.find("\"seed\": 1234") != std::string::npos);
}

TEST_CASE("sample csv round trip across strategy families") {
    const BrdfPtr truth = make_cook_torrance({0.2, 0.6, 0.4, 0.8});
    const SamplingStrategy families[] = {
        SamplingStrategy(StrategyFamily::equispaced_grid),
        SamplingStrategy(StrategyFamily::uniform_sphere, {}, 4),
        SamplingStrategy(StrategyFamily::specular_grid, {}, 0),
        SamplingStrategy(StrategyFamily::adaptive_greedy, {}, 9),
    };
    int round = 0;
    for (const SamplingStrategy &s : families) {
        for (const std::size_t budget : {20UL, 70UL}) {
            const MeasurementSet m = simulate_measurements(
                *truth, s.generate(budget), NoiseModel::additive(0.05),
                1000 + static_cast<std::uint64_t>(round++));
            const MeasurementSet back = read_sample_csv_string(sample_csv_string(m));
            CHECK(back.configuration() == m.configuration());
            REQUIRE(back.values().size() == m.values().size());
            for (std::size_t k = 0; k < m.size(); ++k)
                CHECK(back.values()[k] == m.values()[k]);
        }
    }
}

TEST_CASE("ingest validates rows with line numbers") {
    // theta_i beyond pi/2.
    try {
        read_sample_csv_string(
            "theta_i,phi_i,theta_r,phi_r,value\n"
            "2.0,0.0,0.5,0.0,1.0\n");
        FAIL("expected CsvError");
    } catch (const CsvError &e) {
        CHECK(e.line() == 2);
    }

    // Malformed field on line 3.
    try {
        read_sample_csv_string(
            "theta_i,phi_i,theta_r,phi_r,value\n"
            "0.5,0.0,0.5,0.0,1.0\n"
            "0.5,abc,0.5,0.0,1.0\n");
        FAIL("expected CsvError");
    } catch (const CsvError &e) {
        CHECK(e.line() == 3);
    }

    // Duplicate pair.
    CHECK_THROWS_AS(read_sample_csv_string("theta_i,phi_i,theta_r,phi_r,value\n"
                                           "0.5,0.0,0.5,0.0,1.0\n"
                                           "0.5,0.0,0.5,0.0,2.0\n"),
                    std::invalid_argument);

    // Wrong header and field count.
    CHECK_THROWS_AS(read_sample_csv_string("a,b,c\n"), CsvError);
    CHECK_THROWS_AS(read_sample_csv_string("theta_i,phi_i,theta_r,phi_r,value\n"
                                           "0.5,0.0,0.5,0.0\n"),
                    CsvError);
}

TEST_CASE("ingest rebuilds the grouped structure") {
    // Three incoming groups of sizes 2, 3 and 4.
    std::ostringstream csv;
    csv << "theta_i,phi_i,theta_r,phi_r,value\n";
    const double incoming_theta[3] = {0.2, 0.5, 0.8};
    const std::size_t group_size[3] = {2, 3, 4};
    int v = 0;
    for (int g = 0; g < 3; ++g)
        for (std::size_t q = 0; q < group_size[g]; ++q)
            csv << incoming_theta[g] << ",0.0,"
                << (0.1 + 0.15 * static_cast<double>(q)) << ",1.0," << v++ << "\n";
    const MeasurementSet m = read_sample_csv_string(csv.str());
    CHECK(m.size() == 9);
    REQUIRE(m.configuration().incoming_count() == 3);
    CHECK(m.configuration().reflection_count(0) == 2);
    CHECK(m.configuration().reflection_count(1) == 3);
    CHECK(m.configuration().reflection_count(2) == 4);
    for (int k = 0; k < 9; ++k) CHECK(m.values()[k] == static_cast<double>(k));
}

TEST_CASE("format_double round-trips") {
    for (const double v : {0.1, 1.0 / 3.0, kPi, 1e-300, -2.5e17, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("list_strategies is deterministic and complete") {
    const std::string listing = list_strategies();
    CHECK(listing == list_strategies());
    for (const char *family :
         {"equispaced_grid", "uniform_sphere", "specular_grid", "adaptive_greedy"})
        CHECK(listing.find(family) != std::string::npos);
}
