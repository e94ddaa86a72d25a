// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "brdfsampler/rng.hpp"
#include "brdfsampler/sample_csv.hpp"

namespace brdfsampler {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &message) { throw ConfigError(message); }

const Json &expect_object(const Json &j, const std::string &where) {
    if (!j.is_object()) fail(where + " must be an object");
    return j;
}

void check_keys(const Json &obj, const std::vector<std::string> &allowed,
                const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            fail("unknown key \"" + it.key() + "\" in " + where);
}

double as_number(const Json &j, const std::string &where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

double number_or(const Json &obj, const char *key, const std::string &where,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    return as_number(obj.at(key), where + "." + key);
}

std::uint64_t seed_or(const Json &obj, const char *key, const std::string &where,
                      std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const Json &j = obj.at(key);
    if (!j.is_number_integer() && !j.is_number_unsigned())
        fail(where + "." + key + " must be an integer seed");
    return j.get<std::uint64_t>();
}

bool bool_or(const Json &obj, const char *key, const std::string &where,
             bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) fail(where + "." + key + " must be a boolean");
    return obj.at(key).get<bool>();
}

std::string string_at(const Json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) fail(where + " is missing required key \"" + std::string(key) + "\"");
    if (!obj.at(key).is_string()) fail(where + "." + key + " must be a string");
    return obj.at(key).get<std::string>();
}

std::map<std::string, double> params_map(const Json &obj, const std::string &where) {
    std::map<std::string, double> out;
    expect_object(obj, where);
    for (auto it = obj.begin(); it != obj.end(); ++it)
        out[it.key()] = as_number(it.value(), where + "." + it.key());
    return out;
}

BrdfFamily parse_brdf_family(const std::string &name, const std::string &where) {
    if (name == "lambertian") return BrdfFamily::lambertian;
    if (name == "phong") return BrdfFamily::phong;
    if (name == "cook_torrance") return BrdfFamily::cook_torrance;
    fail(where + ": unknown BRDF family \"" + name + "\"");
}

QuadratureSpec parse_quadrature(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"rule", "node_count", "seed", "cosine_weighting"}, where);
    QuadratureSpec spec;
    const std::string rule = string_at(j, "rule", where);
    if (rule == "product_gauss")
        spec.rule = QuadratureRule::product_gauss;
    else if (rule == "monte_carlo")
        spec.rule = QuadratureRule::monte_carlo;
    else
        fail(where + ".rule: unknown quadrature rule \"" + rule + "\"");
    spec.node_count = static_cast<int>(number_or(j, "node_count", where,
                                                 spec.rule == QuadratureRule::product_gauss
                                                     ? 8.0
                                                     : 4096.0));
    spec.seed = seed_or(j, "seed", where, 0);
    spec.cosine_weighting = bool_or(j, "cosine_weighting", where, false);
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return spec;
}

DistSpec parse_dist(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"p", "quadrature"}, where);
    DistSpec spec;
    if (j.contains("p")) {
        const Json &p = j.at("p");
        if (p.is_string()) {
            const std::string s = p.get<std::string>();
            if (s == "inf" || s == "infinity")
                spec.p = std::numeric_limits<double>::infinity();
            else
                fail(where + ".p: expected a number or \"inf\"");
        } else {
            spec.p = as_number(p, where + ".p");
        }
    }
    if (j.contains("quadrature"))
        spec.quadrature = parse_quadrature(j.at("quadrature"), where + ".quadrature");
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return spec;
}

CostSpec parse_cost(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"kind", "params"}, where);
    CostSpec spec;
    const std::string kind = string_at(j, "kind", where);
    if (kind == "cardinality")
        spec.kind = CostKind::cardinality;
    else if (kind == "weighted_points")
        spec.kind = CostKind::weighted_points;
    else if (kind == "travel")
        spec.kind = CostKind::travel;
    else
        fail(where + ".kind: unknown cost kind \"" + kind + "\"");
    if (j.contains("params")) {
        const std::string pw = where + ".params";
        expect_object(j.at("params"), pw);
        check_keys(j.at("params"), {"offset", "slope"}, pw);
        spec.weight_offset = number_or(j.at("params"), "offset", pw, 1.0);
        spec.weight_slope = number_or(j.at("params"), "slope", pw, 0.0);
    }
    return spec;
}

Majorant parse_majorant(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"kind", "c", "a", "b", "entries"}, where);
    const std::string kind = string_at(j, "kind", where);
    Majorant m;
    if (kind == "constant") {
        m = Majorant::constant(number_or(j, "c", where, 1.0));
    } else if (kind == "linear") {
        m = Majorant::linear(number_or(j, "a", where, 1.0), number_or(j, "b", where, 0.0));
    } else if (kind == "table") {
        if (!j.contains("entries") || !j.at("entries").is_array())
            fail(where + ".entries must be an array of [n, value] pairs");
        std::vector<std::pair<std::size_t, double>> entries;
        for (const Json &e : j.at("entries")) {
            if (!e.is_array() || e.size() != 2)
                fail(where + ".entries: each entry must be [n, value]");
            entries.emplace_back(static_cast<std::size_t>(as_number(e[0], where + ".entries")),
                                 as_number(e[1], where + ".entries"));
        }
        m = Majorant::from_table(std::move(entries));
    } else {
        fail(where + ".kind: unknown majorant kind \"" + kind + "\"");
    }
    try {
        m.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return m;
}

NoiseModel parse_noise(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"kind", "sigma", "clamp_negative"}, where);
    const std::string kind = string_at(j, "kind", where);
    NoiseModel nm;
    if (kind == "none")
        nm = NoiseModel::none();
    else if (kind == "additive_gaussian")
        nm = NoiseModel::additive(number_or(j, "sigma", where, 0.0));
    else if (kind == "relative_gaussian")
        nm = NoiseModel::relative(number_or(j, "sigma", where, 0.0));
    else
        fail(where + ".kind: unknown noise kind \"" + kind + "\"");
    if (j.contains("clamp_negative"))
        nm.clamp_negative = bool_or(j, "clamp_negative", where, nm.clamp_negative);
    try {
        nm.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return nm;
}

Estimator parse_estimator(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"kind", "params"}, where);
    Estimator e;
    const std::string kind = string_at(j, "kind", where);
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    const std::string pw = where + ".params";
    expect_object(params, pw);
    if (kind == "nearest_neighbor") {
        e.kind = EstimatorKind::nearest_neighbor;
        check_keys(params, {}, pw);
    } else if (kind == "idw") {
        e.kind = EstimatorKind::idw;
        check_keys(params, {"power", "neighbors"}, pw);
        e.idw_power = number_or(params, "power", pw, 2.0);
        e.idw_neighbors = static_cast<int>(number_or(params, "neighbors", pw, 16.0));
    } else if (kind == "parametric_fit") {
        e.kind = EstimatorKind::parametric_fit;
        check_keys(params, {"family", "max_iterations"}, pw);
        e.fit_family = parse_brdf_family(string_at(params, "family", pw), pw + ".family");
        e.max_iterations = static_cast<int>(number_or(params, "max_iterations", pw, 100.0));
    } else {
        fail(where + ".kind: unknown estimator kind \"" + kind + "\"");
    }
    try {
        e.validate();
    } catch (const std::invalid_argument &ex) {
        fail(where + ": " + ex.what());
    }
    return e;
}

SamplingStrategy parse_strategy(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"family", "params", "seed", "label"}, where);
    const std::string fam = string_at(j, "family", where);
    StrategyFamily family;
    if (fam == "equispaced_grid")
        family = StrategyFamily::equispaced_grid;
    else if (fam == "uniform_sphere")
        family = StrategyFamily::uniform_sphere;
    else if (fam == "specular_grid")
        family = StrategyFamily::specular_grid;
    else if (fam == "adaptive_greedy")
        family = StrategyFamily::adaptive_greedy;
    else
        fail(where + ".family: unknown strategy family \"" + fam + "\"");

    StrategyOptions opt;
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    const std::string pw = where + ".params";
    expect_object(params, pw);
    switch (family) {
        case StrategyFamily::equispaced_grid:
        case StrategyFamily::adaptive_greedy:
            check_keys(params, {}, pw);
            break;
        case StrategyFamily::uniform_sphere: {
            check_keys(params, {"variant"}, pw);
            if (params.contains("variant")) {
                const std::string v = string_at(params, "variant", pw);
                if (v == "fibonacci")
                    opt.variant = UniformVariant::fibonacci;
                else if (v == "random")
                    opt.variant = UniformVariant::random;
                else
                    fail(pw + ".variant: expected \"fibonacci\" or \"random\"");
            }
            break;
        }
        case StrategyFamily::specular_grid:
            check_keys(params, {"concentration", "cone_half_angle"}, pw);
            opt.concentration = number_or(params, "concentration", pw, 3.0);
            opt.cone_half_angle = number_or(params, "cone_half_angle", pw, kPi / 8.0);
            if (!(opt.concentration > 0.0)) fail(pw + ".concentration must be > 0");
            if (!(opt.cone_half_angle > 0.0 && opt.cone_half_angle <= kHalfPi))
                fail(pw + ".cone_half_angle must lie in (0, pi/2]");
            break;
    }

    const std::uint64_t seed = seed_or(j, "seed", where, 0);
    std::string label;
    if (j.contains("label")) label = string_at(j, "label", where);
    return SamplingStrategy(family, opt, seed, label);
}

BrdfPtr parse_brdf(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"family", "params"}, where);
    const BrdfFamily family = parse_brdf_family(string_at(j, "family", where), where);
    std::map<std::string, double> params;
    if (j.contains("params")) params = params_map(j.at("params"), where + ".params");
    for (const auto &[k, v] : params) {
        const auto &names = family_parameter_names(family);
        if (std::find(names.begin(), names.end(), k) == names.end())
            fail(where + ".params: unknown parameter \"" + k + "\" for family " +
                 family_name(family));
    }
    try {
        return make_brdf(family, params);
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
}

ClassGroundTruth parse_brdf_class(const Json &j, const std::string &where) {
    expect_object(j, where);
    check_keys(j, {"family", "ranges", "seed", "draws"}, where);
    ClassGroundTruth out;
    out.cls.family = parse_brdf_family(string_at(j, "family", where), where);
    if (!j.contains("ranges")) fail(where + " is missing required key \"ranges\"");
    expect_object(j.at("ranges"), where + ".ranges");
    for (auto it = j.at("ranges").begin(); it != j.at("ranges").end(); ++it) {
        const Json &r = it.value();
        if (!r.is_array() || r.size() != 2)
            fail(where + ".ranges." + it.key() + " must be [lo, hi]");
        out.cls.ranges[it.key()] = {as_number(r[0], where + ".ranges"),
                                    as_number(r[1], where + ".ranges")};
    }
    out.cls.seed = seed_or(j, "seed", where, 0);
    out.draws = static_cast<int>(number_or(j, "draws", where, 8.0));
    try {
        out.cls.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return out;
}

std::string sanitize_label(const std::string &label) {
    std::string out;
    for (char c : label)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                   ? c
                   : '_';
    return out.empty() ? std::string("strategy") : out;
}

}  // namespace

std::string run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::curve: return "curve";
        case RunMode::compare: return "compare";
        case RunMode::select: return "select";
    }
    throw std::logic_error("run_mode_name: unknown mode");
}

ExperimentConfig parse_experiment_config(const std::string &json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error &e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    const std::string where = "experiment config";
    expect_object(root, where);
    check_keys(root,
               {"schema", "seed", "brdf", "brdf_class", "strategies", "estimator",
                "dist", "cost", "majorant", "admissibility", "budgets", "noise",
                "replicates", "mode", "output"},
               where);
    if (root.contains("schema") && !(root.at("schema").is_number() &&
                                     root.at("schema").get<double>() == 1.0))
        fail(where + ".schema: only schema 1 is supported");

    ExperimentConfig cfg;
    ExperimentPlan &plan = cfg.plan;

    if (root.contains("brdf") == root.contains("brdf_class"))
        fail(where + ": exactly one of \"brdf\" and \"brdf_class\" is required");
    if (root.contains("brdf"))
        plan.ground_truth = parse_brdf(root.at("brdf"), where + ".brdf");
    else
        plan.ground_truth = parse_brdf_class(root.at("brdf_class"), where + ".brdf_class");

    if (!root.contains("strategies") || !root.at("strategies").is_array() ||
        root.at("strategies").empty())
        fail(where + ".strategies must be a nonempty array");
    std::set<std::string> used_labels;
    std::size_t index = 0;
    for (const Json &sj : root.at("strategies")) {
        ++index;
        SamplingStrategy s =
            parse_strategy(sj, where + ".strategies[" + std::to_string(index - 1) + "]");
        std::string label = sanitize_label(s.label());
        while (used_labels.count(label)) label += "_" + std::to_string(index);
        used_labels.insert(label);
        plan.strategies.emplace_back(s.family(), s.options(), s.seed(), label);
    }

    if (root.contains("estimator"))
        plan.estimator = parse_estimator(root.at("estimator"), where + ".estimator");
    if (root.contains("dist")) plan.dist_spec = parse_dist(root.at("dist"), where + ".dist");
    if (root.contains("cost")) plan.cost_spec = parse_cost(root.at("cost"), where + ".cost");
    if (root.contains("majorant"))
        plan.majorant = parse_majorant(root.at("majorant"), where + ".majorant");
    if (root.contains("admissibility")) {
        const std::string mode = string_at(root, "admissibility", where);
        if (mode == "uniform")
            plan.admissibility = AdmissibilityMode::uniform;
        else if (mode == "asymptotic")
            plan.admissibility = AdmissibilityMode::asymptotic;
        else
            fail(where + ".admissibility: expected \"uniform\" or \"asymptotic\"");
    }

    if (!root.contains("budgets") || !root.at("budgets").is_array() ||
        root.at("budgets").empty())
        fail(where + ".budgets must be a nonempty array of integers");
    for (const Json &b : root.at("budgets")) {
        const double v = as_number(b, where + ".budgets");
        if (v < 1 || v != std::floor(v)) fail(where + ".budgets: budgets must be positive integers");
        plan.budgets.push_back(static_cast<std::size_t>(v));
    }

    if (root.contains("noise")) plan.noise = parse_noise(root.at("noise"), where + ".noise");
    plan.seed = seed_or(root, "seed", where, 0);
    plan.replicates = static_cast<int>(number_or(root, "replicates", where, 1.0));

    if (root.contains("mode")) {
        const std::string mode = string_at(root, "mode", where);
        if (mode == "curve")
            cfg.mode = RunMode::curve;
        else if (mode == "compare")
            cfg.mode = RunMode::compare;
        else if (mode == "select")
            cfg.mode = RunMode::select;
        else
            fail(where + ".mode: expected \"curve\", \"compare\" or \"select\"");
    } else {
        cfg.mode = plan.strategies.size() == 1
                       ? RunMode::curve
                       : (plan.strategies.size() == 2 ? RunMode::compare : RunMode::select);
    }
    if (cfg.mode == RunMode::compare && plan.strategies.size() != 2)
        fail(where + ": compare mode requires exactly two strategies");

    if (root.contains("output")) {
        const Json &out = root.at("output");
        const std::string ow = where + ".output";
        expect_object(out, ow);
        check_keys(out, {"directory", "formats"}, ow);
        if (out.contains("directory")) cfg.output_directory = string_at(out, "directory", ow);
        if (out.contains("formats")) {
            if (!out.at("formats").is_array()) fail(ow + ".formats must be an array");
            cfg.emit_json = cfg.emit_csv = false;
            for (const Json &f : out.at("formats")) {
                if (!f.is_string()) fail(ow + ".formats entries must be strings");
                const std::string s = f.get<std::string>();
                if (s == "json")
                    cfg.emit_json = true;
                else if (s == "csv")
                    cfg.emit_csv = true;
                else
                    fail(ow + ".formats: unknown format \"" + s + "\"");
            }
        }
    }

    try {
        plan.validate();
    } catch (const std::invalid_argument &e) {
        fail(where + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

namespace {

Json quadrature_json(const QuadratureSpec &q) {
    Json j;
    j["rule"] = q.rule == QuadratureRule::product_gauss ? "product_gauss" : "monte_carlo";
    j["node_count"] = q.node_count;
    j["seed"] = q.seed;
    j["cosine_weighting"] = q.cosine_weighting;
    return j;
}

Json config_echo(const ExperimentConfig &cfg) {
    const ExperimentPlan &plan = cfg.plan;
    Json j;
    j["schema"] = 1;
    j["mode"] = run_mode_name(cfg.mode);
    j["seed"] = plan.seed;
    j["replicates"] = plan.replicates;
    if (plan.class_mode()) {
        const auto &cgt = std::get<ClassGroundTruth>(plan.ground_truth);
        Json c;
        c["family"] = family_name(cgt.cls.family);
        Json ranges;
        for (const auto &[k, r] : cgt.cls.ranges) ranges[k] = Json::array({r.lo, r.hi});
        c["ranges"] = ranges;
        c["seed"] = cgt.cls.seed;
        c["draws"] = cgt.draws;
        j["brdf_class"] = c;
    } else {
        const BrdfPtr &f = std::get<BrdfPtr>(plan.ground_truth);
        Json b;
        b["identifier"] = f->identifier();
        Json params;
        for (const auto &[k, v] : f->parameters()) params[k] = v;
        b["params"] = params;
        j["brdf"] = b;
    }
    Json strategies = Json::array();
    for (const SamplingStrategy &s : plan.strategies) {
        Json sj;
        sj["family"] = family_name(s.family());
        sj["label"] = s.label();
        sj["seed"] = s.seed();
        Json params = Json::object();
        if (s.family() == StrategyFamily::uniform_sphere)
            params["variant"] =
                s.options().variant == UniformVariant::fibonacci ? "fibonacci" : "random";
        if (s.family() == StrategyFamily::specular_grid) {
            params["concentration"] = s.options().concentration;
            params["cone_half_angle"] = s.options().cone_half_angle;
        }
        sj["params"] = params;
        strategies.push_back(sj);
    }
    j["strategies"] = strategies;
    Json est;
    est["kind"] = estimator_kind_name(plan.estimator.kind);
    if (plan.estimator.kind == EstimatorKind::idw) {
        est["power"] = plan.estimator.idw_power;
        est["neighbors"] = plan.estimator.idw_neighbors;
    }
    if (plan.estimator.kind == EstimatorKind::parametric_fit) {
        est["family"] = family_name(plan.estimator.fit_family);
        est["max_iterations"] = plan.estimator.max_iterations;
    }
    j["estimator"] = est;
    Json distj;
    distj["p"] = std::isinf(plan.dist_spec.p) ? Json("inf") : Json(plan.dist_spec.p);
    distj["quadrature"] = quadrature_json(plan.dist_spec.quadrature);
    j["dist"] = distj;
    Json costj;
    costj["kind"] = cost_kind_name(plan.cost_spec.kind);
    if (plan.cost_spec.kind == CostKind::weighted_points) {
        costj["offset"] = plan.cost_spec.weight_offset;
        costj["slope"] = plan.cost_spec.weight_slope;
    }
    j["cost"] = costj;
    Json mj;
    switch (plan.majorant.kind) {
        case MajorantKind::constant:
            mj["kind"] = "constant";
            mj["c"] = plan.majorant.c;
            break;
        case MajorantKind::linear:
            mj["kind"] = "linear";
            mj["a"] = plan.majorant.a;
            mj["b"] = plan.majorant.b;
            break;
        case MajorantKind::table: {
            mj["kind"] = "table";
            Json entries = Json::array();
            for (const auto &[n, v] : plan.majorant.table)
                entries.push_back(Json::array({n, v}));
            mj["entries"] = entries;
            break;
        }
    }
    j["majorant"] = mj;
    j["admissibility"] = admissibility_mode_name(plan.admissibility);
    j["budgets"] = plan.budgets;
    Json noise;
    noise["kind"] = noise_kind_name(plan.noise.kind);
    noise["sigma"] = plan.noise.sigma;
    noise["clamp_negative"] = plan.noise.clamp_negative;
    j["noise"] = noise;
    return j;
}

Json curve_json(const std::vector<CurvePoint> &curve) {
    Json points = Json::array();
    for (const CurvePoint &pt : curve) {
        Json p;
        p["budget"] = pt.budget;
        p["n"] = pt.n;
        p["cost"] = pt.cost_value;
        p["error"] = pt.error;
        p["std_error"] = pt.std_error;
        p["fit_converged"] = pt.fit_converged;
        points.push_back(p);
    }
    return points;
}

Json admissibility_json(const std::string &label, const AdmissibilityResult &res,
                        AdmissibilityMode mode) {
    Json j;
    j["strategy"] = label;
    j["mode"] = admissibility_mode_name(mode);
    j["admissible"] = res.admissible;
    j["first_violation_n"] =
        res.first_violation_n ? Json(*res.first_violation_n) : Json(nullptr);
    j["first_violation_budget"] =
        res.first_violation_budget ? Json(*res.first_violation_budget) : Json(nullptr);
    j["n_min"] = res.n_min ? Json(*res.n_min) : Json(nullptr);
    Json points = Json::array();
    for (const AdmissibilityPoint &pt : res.points) {
        Json p;
        p["budget"] = pt.budget;
        p["n"] = pt.n;
        p["cost"] = pt.cost_value;
        p["bound"] = pt.bound;
        p["ok"] = pt.ok;
        points.push_back(p);
    }
    j["points"] = points;
    return j;
}

void write_text_file(const std::filesystem::path &path, const std::string &content,
                     std::vector<std::filesystem::path> &written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    written.push_back(path);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig &config, const RunOptions &options) {
    ExperimentConfig cfg = config;
    if (options.output_directory) cfg.output_directory = *options.output_directory;
    if (options.seed) cfg.plan.seed = *options.seed;
    if (options.replicates) cfg.plan.replicates = *options.replicates;
    ExperimentPlan &plan = cfg.plan;
    plan.validate();

    RunResult result;
    result.output_directory = cfg.output_directory;
    std::filesystem::create_directories(cfg.output_directory);

    // Stage: admissibility.
    std::vector<AdmissibilityResult> admissibility;
    admissibility.reserve(plan.strategies.size());
    for (const SamplingStrategy &s : plan.strategies)
        admissibility.push_back(check_admissible(s, plan.cost_spec, plan.majorant,
                                                 plan.budgets, plan.admissibility));

    // Stage: curves and the mode-specific result.
    std::vector<std::vector<CurvePoint>> curves(plan.strategies.size());
    StrategyComparisonReport comparison;
    SelectionReport selection;
    if (cfg.mode == RunMode::compare) {
        comparison = compare_strategies(plan);  // enforces admissibility
        curves[0] = comparison.curve1;
        curves[1] = comparison.curve2;
        result.verdict = to_string(comparison.verdict);
    } else if (cfg.mode == RunMode::select) {
        selection = select_best_strategy(plan);
        curves = selection.curves;
    } else {
        for (std::size_t s = 0; s < plan.strategies.size(); ++s)
            curves[s] = error_curve(plan, s);
    }

    // Stage: report emission.
    if (cfg.emit_json) {
        Json report;
        report["schema"] = 1;
        report["mode"] = run_mode_name(cfg.mode);
        report["rng_algorithm"] = rng::kAlgorithmId;
        report["config"] = config_echo(cfg);
        Json adm = Json::array();
        for (std::size_t s = 0; s < plan.strategies.size(); ++s)
            adm.push_back(admissibility_json(plan.strategies[s].label(), admissibility[s],
                                             plan.admissibility));
        report["admissibility"] = adm;
        Json curvesj = Json::array();
        for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
            Json cj;
            cj["strategy"] = plan.strategies[s].label();
            cj["points"] = curve_json(curves[s]);
            curvesj.push_back(cj);
        }
        report["curves"] = curvesj;
        if (cfg.mode == RunMode::compare) {
            Json cmp;
            cmp["margin"] = comparison.margin;
            cmp["tail_begin_budget"] = plan.budgets[comparison.tail_begin];
            Json ratio = Json::array();
            for (const RatioPoint &rp : comparison.ratios) {
                Json r;
                r["budget"] = rp.budget;
                r["value"] = rp.excluded ? Json(nullptr) : Json(rp.ratio);
                r["excluded"] = rp.excluded;
                ratio.push_back(r);
            }
            cmp["ratio"] = ratio;
            cmp["tail_statistic"] = std::isnan(comparison.tail_statistic)
                                        ? Json(nullptr)
                                        : Json(comparison.tail_statistic);
            cmp["reverse_tail_statistic"] =
                std::isnan(comparison.reverse_tail_statistic)
                    ? Json(nullptr)
                    : Json(comparison.reverse_tail_statistic);
            cmp["verdict"] = to_string(comparison.verdict);
            report["comparison"] = cmp;
        }
        if (cfg.mode == RunMode::select) {
            Json sel;
            sel["winner"] = plan.strategies[selection.winner].label();
            Json per_budget = Json::array();
            for (const std::size_t w : selection.winner_per_budget)
                per_budget.push_back(plan.strategies[w].label());
            sel["winner_per_budget"] = per_budget;
            Json excluded = Json::array();
            for (const std::size_t s : selection.excluded)
                excluded.push_back(plan.strategies[s].label());
            sel["excluded"] = excluded;
            report["selection"] = sel;
        }
        report["notes"] = Json::array(
            {"The tail statistic (maximum error ratio over the top half of the "
             "budgets) is a finite-budget surrogate for the limsup ratio.",
             "p=inf distances are maxima over the quadrature node set, a "
             "node-limited approximation of the true supremum."});
        write_text_file(cfg.output_directory / "report.json", report.dump(2) + "\n",
                        result.files_written);
    }

    if (cfg.emit_csv) {
        std::ostringstream csv;
        if (cfg.mode == RunMode::compare) {
            csv << "budget,n1,error1,n2,error2,ratio,excluded\n";
            for (std::size_t i = 0; i < comparison.ratios.size(); ++i) {
                const CurvePoint &a = comparison.curve1[i];
                const CurvePoint &b = comparison.curve2[i];
                const RatioPoint &rp = comparison.ratios[i];
                csv << a.budget << ',' << a.n << ',' << format_double(a.error) << ','
                    << b.n << ',' << format_double(b.error) << ','
                    << format_double(rp.ratio) << ',' << (rp.excluded ? 1 : 0) << '\n';
            }
        } else {
            csv << "strategy,budget,n,cost,error,std_error,fit_converged\n";
            for (std::size_t s = 0; s < plan.strategies.size(); ++s)
                for (const CurvePoint &pt : curves[s])
                    csv << plan.strategies[s].label() << ',' << pt.budget << ',' << pt.n
                        << ',' << format_double(pt.cost_value) << ','
                        << format_double(pt.error) << ',' << format_double(pt.std_error)
                        << ',' << (pt.fit_converged ? 1 : 0) << '\n';
        }
        write_text_file(cfg.output_directory / "curves.csv", csv.str(),
                        result.files_written);

        // Sample points per (strategy, budget), measured as the first cell
        // of the corresponding curve entry.
        BrdfPtr truth0 = plan.class_mode()
                             ? draw_from_class(std::get<ClassGroundTruth>(plan.ground_truth).cls, 1)
                                   .front()
                             : std::get<BrdfPtr>(plan.ground_truth);
        for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
            const SamplingStrategy &strategy = plan.strategies[s];
            for (std::size_t ib = 0; ib < plan.budgets.size(); ++ib) {
                const std::uint64_t seed = cell_noise_seed(plan.seed, ib, 0, 0);
                const ObserveFn observe = [&](const MeasurementConfiguration &c) {
                    return simulate_measurements(*truth0, c, plan.noise, seed).values();
                };
                const MeasurementConfiguration config =
                    strategy.generate(plan.budgets[ib], observe);
                const MeasurementSet ms =
                    simulate_measurements(*truth0, config, plan.noise, seed);
                const std::filesystem::path path =
                    cfg.output_directory /
                    ("points_" + strategy.label() + "_" + std::to_string(ms.size()) +
                     ".csv");
                write_text_file(path, sample_csv_string(ms), result.files_written);
            }
        }
    }
    return result;
}

RunResult run_experiment_file(const std::filesystem::path &config_path,
                              const RunOptions &options) {
    return run_experiment(load_experiment_config(config_path), options);
}

MeasurementSet ingest(const std::filesystem::path &csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw CsvError(0, "cannot open " + csv_path.string());
    return read_sample_csv(in);
}

std::string list_strategies() {
    std::ostringstream os;
    os << "Sampling strategy families (budget -> measurement configuration with n >= budget):\n"
       << "\n"
       << "equispaced_grid\n"
       << "  Full angular grid for both incoming and reflection sets: theta rows at\n"
       << "  (k+0.5)*(pi/2)/N_theta, phi columns at k*2*pi/N_phi, N_phi = 2*N_theta,\n"
       << "  with the smallest resolution satisfying (N_theta*N_phi)^2 >= budget.\n"
       << "  params: none\n"
       << "\n"
       << "uniform_sphere\n"
       << "  ceil(sqrt(budget)) incoming directions, ceil(budget/P_inc) reflections each;\n"
       << "  every set is a Fibonacci hemisphere set (equal-area latitude slices with\n"
       << "  golden-ratio azimuth increments).\n"
       << "  params: variant = \"fibonacci\" (default) | \"random\" (seeded uniform draws)\n"
       << "\n"
       << "specular_grid\n"
       << "  Equispaced incoming grid; each reflection set puts the fraction\n"
       << "  1 - 1/(1+concentration) of its nodes inside the cone around the mirror\n"
       << "  direction and the remainder on a coarse hemisphere grid.\n"
       << "  params: concentration = 3.0 (default, > 0),\n"
       << "          cone_half_angle = pi/8 (default, in (0, pi/2])\n"
       << "\n"
       << "adaptive_greedy\n"
       << "  Starts from a uniform_sphere configuration of size max(8, budget/4), then\n"
       << "  greedily inserts candidates from a 10x-oversampled uniform pool, maximizing\n"
       << "  (local observed value range) * (distance to the nearest existing sample).\n"
       << "  params: none (seeded)\n";
    return os.str();
}

}  // namespace brdfsampler
