// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brdfsampler/measurement.hpp"
#include "brdfsampler/rng.hpp"

namespace brdfsampler {

namespace {

// Exact-equality key for canonicalized pairs.
struct PairKey {
    std::uint64_t a, b, c, d;
    bool operator<(const PairKey &o) const {
        return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
    }
    bool operator==(const PairKey &o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

PairKey key_of(const std::pair<Direction, Direction> &p) {
    return {std::bit_cast<std::uint64_t>(p.first.theta()),
            std::bit_cast<std::uint64_t>(p.first.phi()),
            std::bit_cast<std::uint64_t>(p.second.theta()),
            std::bit_cast<std::uint64_t>(p.second.phi())};
}

double inline_angle(const Vec3 &u, const Vec3 &v) {
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

}  // namespace

MeasurementConfiguration::MeasurementConfiguration(
    std::vector<Direction> incoming, std::vector<std::vector<Direction>> reflections)
    : incoming_(std::move(incoming)), reflections_(std::move(reflections)) {
    if (incoming_.empty())
        throw std::invalid_argument("MeasurementConfiguration: needs at least one incoming direction");
    if (reflections_.size() != incoming_.size())
        throw std::invalid_argument("MeasurementConfiguration: one reflection list per incoming direction");
    std::size_t total = 0;
    for (const auto &r : reflections_) {
        if (r.empty())
            throw std::invalid_argument("MeasurementConfiguration: empty reflection list");
        total += r.size();
    }
    pairs_.reserve(total);
    for (std::size_t p = 0; p < incoming_.size(); ++p)
        for (const Direction &r : reflections_[p]) pairs_.emplace_back(incoming_[p], r);
    if (pairs_.size() != total)
        throw std::logic_error("MeasurementConfiguration: size recomputation mismatch");

    std::vector<PairKey> keys;
    keys.reserve(pairs_.size());
    for (const auto &p : pairs_) keys.push_back(key_of(p));
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw std::invalid_argument("MeasurementConfiguration: duplicate (incoming, reflection) pair");
}

MeasurementConfiguration MeasurementConfiguration::from_pairs(
    std::span<const std::pair<Direction, Direction>> pairs) {
    std::vector<Direction> incoming;
    std::vector<std::vector<Direction>> reflections;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> seen;  // incoming keys
    for (const auto &pr : pairs) {
        const std::pair<std::uint64_t, std::uint64_t> k{
            std::bit_cast<std::uint64_t>(pr.first.theta()),
            std::bit_cast<std::uint64_t>(pr.first.phi())};
        std::size_t idx = seen.size();
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (seen[i] == k) {
                idx = i;
                break;
            }
        if (idx == seen.size()) {
            seen.push_back(k);
            incoming.push_back(pr.first);
            reflections.emplace_back();
        }
        reflections[idx].push_back(pr.second);
    }
    return MeasurementConfiguration(std::move(incoming), std::move(reflections));
}

bool MeasurementConfiguration::operator==(const MeasurementConfiguration &o) const {
    return incoming_ == o.incoming_ && reflections_ == o.reflections_;
}

std::vector<Direction> fibonacci_hemisphere(std::size_t count) {
    if (count == 0) throw std::invalid_argument("fibonacci_hemisphere: count must be >= 1");
    static const double kGoldenConjugate = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<Direction> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double z = 1.0 - (k + 0.5) / static_cast<double>(count);
        const double phi = std::fmod(kTwoPi * k * kGoldenConjugate, kTwoPi);
        out.emplace_back(std::acos(z), phi);
    }
    return out;
}

std::vector<Direction> equispaced_hemisphere(std::size_t n_theta, std::size_t n_phi) {
    if (n_theta == 0 || n_phi == 0)
        throw std::invalid_argument("equispaced_hemisphere: resolutions must be >= 1");
    std::vector<Direction> out;
    out.reserve(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta = (i + 0.5) * kHalfPi / n_theta;
        for (std::size_t j = 0; j < n_phi; ++j)
            out.emplace_back(theta, j * kTwoPi / n_phi);
    }
    return out;
}

namespace {

// Distributes `count` nodes over `rows` rows as evenly as possible,
// the first rows taking the remainder.
std::vector<std::size_t> distribute(std::size_t count, std::size_t rows) {
    std::vector<std::size_t> out(rows, count / rows);
    for (std::size_t i = 0; i < count % rows; ++i) ++out[i];
    return out;
}

std::size_t ring_rows(std::size_t count) {
    const auto r = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(count) / 2.0)));
    return std::max<std::size_t>(1, std::min(r, count));
}

}  // namespace

std::vector<Direction> ring_hemisphere(std::size_t count) {
    if (count == 0) throw std::invalid_argument("ring_hemisphere: count must be >= 1");
    const std::size_t rows = ring_rows(count);
    const std::vector<std::size_t> per_row = distribute(count, rows);
    std::vector<Direction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < rows; ++i) {
        const double theta = (i + 0.5) * kHalfPi / rows;
        for (std::size_t j = 0; j < per_row[i]; ++j)
            out.emplace_back(theta, j * kTwoPi / per_row[i]);
    }
    return out;
}

std::vector<Direction> cone_set(const Direction &axis, double half_angle,
                                std::size_t count, double beta_offset) {
    if (count == 0) throw std::invalid_argument("cone_set: count must be >= 1");
    if (!(half_angle > 0.0 && half_angle <= kHalfPi))
        throw std::invalid_argument("cone_set: half_angle outside (0, pi/2]");
    const Vec3 a = to_unit_vector(axis);
    Vec3 t1 = cross(Vec3{0.0, 0.0, 1.0}, a);
    const double t1n = norm(t1);
    t1 = t1n > 1e-12 ? t1 / t1n : Vec3{1.0, 0.0, 0.0};
    const Vec3 t2 = cross(a, t1);

    const std::size_t rows = ring_rows(count);
    const std::vector<std::size_t> per_row = distribute(count, rows);
    std::vector<Direction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < rows; ++i) {
        const double alpha = (i + 0.5) * half_angle / rows;
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        for (std::size_t j = 0; j < per_row[i]; ++j) {
            const double beta = (j + beta_offset) * kTwoPi / per_row[i];
            Vec3 v = a * ca + (t1 * std::cos(beta) + t2 * std::sin(beta)) * sa;
            // A node below the horizon flips back up; since the axis has
            // z >= 0 the flip cannot increase the angle to the axis.
            if (v.z < 0.0) v.z = -v.z;
            out.push_back(from_unit_vector(v / norm(v)));
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> equispaced_resolution(std::size_t budget) {
    if (budget <= 1) return {1, 1};
    std::size_t n_theta = 1;
    auto pairs_for = [](std::size_t nt) {
        const std::size_t set = nt * 2 * nt;
        return set * set;
    };
    while (pairs_for(n_theta) < budget) ++n_theta;
    return {n_theta, 2 * n_theta};
}

MeasurementConfiguration equispaced_grid(std::size_t budget) {
    if (budget == 0) throw std::invalid_argument("equispaced_grid: budget must be >= 1");
    const auto [nt, np] = equispaced_resolution(budget);
    std::vector<Direction> set = equispaced_hemisphere(nt, np);
    std::vector<std::vector<Direction>> reflections(set.size(), set);
    return MeasurementConfiguration(std::move(set), std::move(reflections));
}

MeasurementConfiguration uniform_sphere(std::size_t budget, std::uint64_t seed,
                                        UniformVariant variant) {
    if (budget == 0) throw std::invalid_argument("uniform_sphere: budget must be >= 1");
    const auto p_inc = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(budget))));
    const std::size_t per_incoming = (budget + p_inc - 1) / p_inc;

    if (variant == UniformVariant::fibonacci) {
        std::vector<Direction> incoming = fibonacci_hemisphere(p_inc);
        std::vector<std::vector<Direction>> reflections(
            p_inc, fibonacci_hemisphere(per_incoming));
        return MeasurementConfiguration(std::move(incoming), std::move(reflections));
    }

    auto draw_set = [](std::uint64_t s, std::size_t n) {
        rng::Sequence seq(s);
        std::vector<Direction> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) out.push_back(seq.next_hemisphere_direction());
        return out;
    };
    std::vector<Direction> incoming = draw_set(rng::derive(seed, 0), p_inc);
    std::vector<std::vector<Direction>> reflections;
    reflections.reserve(p_inc);
    for (std::size_t p = 0; p < p_inc; ++p)
        reflections.push_back(draw_set(rng::derive(seed, p + 1), per_incoming));
    return MeasurementConfiguration(std::move(incoming), std::move(reflections));
}

MeasurementConfiguration specular_grid(std::size_t budget, double concentration,
                                       double cone_half_angle) {
    if (budget == 0) throw std::invalid_argument("specular_grid: budget must be >= 1");
    if (!(concentration > 0.0))
        throw std::invalid_argument("specular_grid: concentration must be > 0");
    if (budget == 1) {
        const Direction normal(0.0, 0.0);
        return MeasurementConfiguration({normal}, {{mirror_reflect(normal)}});
    }
    const auto [nt, np] = equispaced_resolution(budget);
    std::vector<Direction> incoming = equispaced_hemisphere(nt, np);
    const std::size_t per_incoming = incoming.size();
    const auto in_cone = static_cast<std::size_t>(std::llround(
        static_cast<double>(per_incoming) * (1.0 - 1.0 / (1.0 + concentration))));
    const std::size_t coarse = per_incoming - in_cone;

    std::vector<std::vector<Direction>> reflections;
    reflections.reserve(incoming.size());
    const std::vector<Direction> coarse_set =
        coarse > 0 ? ring_hemisphere(coarse) : std::vector<Direction>{};
    for (const Direction &wi : incoming) {
        // Symmetric axes can land meridian-aligned cone nodes exactly on
        // coarse-grid nodes; shift the cone azimuth until the list is
        // duplicate-free.
        std::vector<Direction> refl;
        for (int attempt = 0; attempt < 32; ++attempt) {
            refl.clear();
            refl.reserve(per_incoming);
            if (in_cone > 0) {
                const double offset = 0.5 + 0.1234567891 * attempt;
                for (const Direction &d :
                     cone_set(mirror_reflect(wi), cone_half_angle, in_cone, offset))
                    refl.push_back(d);
            }
            refl.insert(refl.end(), coarse_set.begin(), coarse_set.end());
            std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
            keys.reserve(refl.size());
            for (const Direction &d : refl)
                keys.emplace_back(std::bit_cast<std::uint64_t>(d.theta()),
                                  std::bit_cast<std::uint64_t>(d.phi()));
            std::sort(keys.begin(), keys.end());
            if (std::adjacent_find(keys.begin(), keys.end()) == keys.end()) break;
            if (attempt == 31)
                throw std::logic_error("specular_grid: could not form a duplicate-free reflection set");
        }
        reflections.push_back(std::move(refl));
    }
    return MeasurementConfiguration(std::move(incoming), std::move(reflections));
}

namespace {

struct PairVecs {
    Vec3 vi, vr;
};

PairVecs vecs_of(const std::pair<Direction, Direction> &p) {
    return {to_unit_vector(p.first), to_unit_vector(p.second)};
}

double pair_dist(const PairVecs &a, const PairVecs &b) {
    const double di = inline_angle(a.vi, b.vi);
    const double dr = inline_angle(a.vr, b.vr);
    return std::sqrt(di * di + dr * dr);
}

bool lex_less(const std::pair<Direction, Direction> &a,
              const std::pair<Direction, Direction> &b) {
    return std::make_tuple(a.first.theta(), a.first.phi(), a.second.theta(),
                           a.second.phi()) <
           std::make_tuple(b.first.theta(), b.first.phi(), b.second.theta(),
                           b.second.phi());
}

MeasurementConfiguration adaptive_greedy_impl(
    std::size_t budget, const std::vector<std::pair<Direction, Direction>> &obs_pairs,
    const std::vector<double> &obs_values, std::uint64_t seed) {
    if (budget == 0) throw std::invalid_argument("adaptive_greedy: budget must be >= 1");
    if (budget < obs_pairs.size())
        throw std::invalid_argument("adaptive_greedy: budget smaller than the observed set");

    const MeasurementConfiguration seed_cfg =
        uniform_sphere(std::max<std::size_t>(8, budget / 4), seed);

    std::vector<std::pair<Direction, Direction>> existing = seed_cfg.pairs();
    std::vector<PairKey> existing_keys;
    existing_keys.reserve(budget + existing.size());
    for (const auto &p : existing) existing_keys.push_back(key_of(p));
    auto contains = [&existing_keys](const PairKey &k) {
        return std::find(existing_keys.begin(), existing_keys.end(), k) !=
               existing_keys.end();
    };
    for (const auto &p : obs_pairs) {
        const PairKey k = key_of(p);
        if (!contains(k)) {
            existing.push_back(p);
            existing_keys.push_back(k);
        }
    }

    std::vector<PairVecs> existing_vecs;
    existing_vecs.reserve(existing.size());
    for (const auto &p : existing) existing_vecs.push_back(vecs_of(p));

    if (existing.size() >= budget)
        return MeasurementConfiguration::from_pairs(existing);

    // Fixed 10x-oversampled uniform candidate pool.
    const std::size_t pool_size = 10 * budget;
    rng::Sequence pool_rng(rng::derive(seed, 0x706f6f6cULL));
    std::vector<std::pair<Direction, Direction>> pool;
    pool.reserve(pool_size);
    for (std::size_t k = 0; k < pool_size; ++k) {
        const Direction wi = pool_rng.next_hemisphere_direction();
        const Direction wr = pool_rng.next_hemisphere_direction();
        pool.emplace_back(wi, wr);
    }
    std::vector<PairVecs> pool_vecs;
    pool_vecs.reserve(pool_size);
    for (const auto &p : pool) pool_vecs.push_back(vecs_of(p));

    std::vector<PairVecs> obs_vecs;
    obs_vecs.reserve(obs_pairs.size());
    for (const auto &p : obs_pairs) obs_vecs.push_back(vecs_of(p));

    // Value range among the <= 4 nearest observed samples; zero when fewer
    // than two observed values exist.
    std::vector<double> range_factor(pool_size, 0.0);
    if (obs_pairs.size() >= 2) {
        const std::size_t kn = std::min<std::size_t>(4, obs_pairs.size());
        std::vector<std::pair<double, std::size_t>> dists(obs_pairs.size());
        for (std::size_t c = 0; c < pool_size; ++c) {
            for (std::size_t s = 0; s < obs_pairs.size(); ++s)
                dists[s] = {pair_dist(pool_vecs[c], obs_vecs[s]), s};
            std::partial_sort(dists.begin(), dists.begin() + kn, dists.end());
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t j = 0; j < kn; ++j) {
                lo = std::min(lo, obs_values[dists[j].second]);
                hi = std::max(hi, obs_values[dists[j].second]);
            }
            range_factor[c] = hi - lo;
        }
    }

    std::vector<double> dnear(pool_size, std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < pool_size; ++c)
        for (const auto &e : existing_vecs)
            dnear[c] = std::min(dnear[c], pair_dist(pool_vecs[c], e));
    std::vector<bool> used(pool_size, false);
    for (std::size_t c = 0; c < pool_size; ++c)
        if (contains(key_of(pool[c]))) used[c] = true;

    while (existing.size() < budget) {
        std::size_t best = pool_size;
        double best_score = -1.0;
        for (std::size_t c = 0; c < pool_size; ++c) {
            if (used[c]) continue;
            const double score = (range_factor[c] + 1e-12) * dnear[c];
            if (score > best_score ||
                (score == best_score && best < pool_size && lex_less(pool[c], pool[best]))) {
                best = c;
                best_score = score;
            }
        }
        if (best == pool_size)
            throw std::logic_error("adaptive_greedy: candidate pool exhausted");
        used[best] = true;
        existing.push_back(pool[best]);
        existing_keys.push_back(key_of(pool[best]));
        for (std::size_t c = 0; c < pool_size; ++c)
            if (!used[c])
                dnear[c] = std::min(dnear[c], pair_dist(pool_vecs[c], pool_vecs[best]));
    }
    return MeasurementConfiguration::from_pairs(existing);
}

}  // namespace

MeasurementConfiguration adaptive_greedy(std::size_t budget,
                                         const MeasurementSet &observed,
                                         std::uint64_t seed) {
    return adaptive_greedy_impl(budget, observed.configuration().pairs(),
                                observed.values(), seed);
}

std::string family_name(StrategyFamily f) {
    switch (f) {
        case StrategyFamily::equispaced_grid: return "equispaced_grid";
        case StrategyFamily::uniform_sphere: return "uniform_sphere";
        case StrategyFamily::specular_grid: return "specular_grid";
        case StrategyFamily::adaptive_greedy: return "adaptive_greedy";
    }
    throw std::logic_error("family_name: unknown strategy family");
}

SamplingStrategy::SamplingStrategy(StrategyFamily family, StrategyOptions options,
                                   std::uint64_t seed, std::string label)
    : family_(family), options_(options), seed_(seed), label_(std::move(label)) {
    if (label_.empty()) label_ = family_name(family_);
}

MeasurementConfiguration SamplingStrategy::generate(std::size_t budget) const {
    return generate(budget, ObserveFn{});
}

MeasurementConfiguration SamplingStrategy::generate(std::size_t budget,
                                                    const ObserveFn &observe) const {
    switch (family_) {
        case StrategyFamily::equispaced_grid:
            return equispaced_grid(budget);
        case StrategyFamily::uniform_sphere:
            return uniform_sphere(budget, seed_, options_.variant);
        case StrategyFamily::specular_grid:
            return specular_grid(budget, options_.concentration,
                                 options_.cone_half_angle);
        case StrategyFamily::adaptive_greedy: {
            if (!observe)
                return adaptive_greedy_impl(budget, {}, {}, seed_);
            const MeasurementConfiguration seed_cfg =
                uniform_sphere(std::max<std::size_t>(8, budget / 4), seed_);
            std::vector<double> values = observe(seed_cfg);
            if (values.size() != seed_cfg.size())
                throw std::invalid_argument(
                    "SamplingStrategy: observer returned a mismatched value count");
            return adaptive_greedy_impl(budget, seed_cfg.pairs(), values, seed_);
        }
    }
    throw std::logic_error("SamplingStrategy: unknown family");
}

std::vector<MeasurementConfiguration> strategy_sequence(
    const SamplingStrategy &strategy, std::span<const std::size_t> budgets) {
    if (budgets.empty())
        throw std::invalid_argument("strategy_sequence: budgets must be nonempty");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("strategy_sequence: budgets must be strictly ascending");
    std::vector<MeasurementConfiguration> out;
    out.reserve(budgets.size());
    for (const std::size_t b : budgets) out.push_back(strategy.generate(b));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].size() < out[i - 1].size())
            throw std::logic_error("strategy_sequence: configuration sizes must be nondecreasing");
    return out;
}

}  // namespace brdfsampler
