#include "hamperc/statistics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hamperc/branching.hpp"
#include "hamperc/parallel.hpp"

namespace hamperc {

namespace {

constexpr double kZ95 = 1.96;

// Version bumps whenever a value below changes.
constexpr Threshold kThresholdTable[] = {
    {"oracle.max_std_errors", 3.0, "pinned: exact-oracle agreement band"},
    {"otter_dwass.max_gap", 1e-6, "pinned: partial PMF sum vs extinction probability"},
    {"otter_dwass.max_excess", 1e-9, "pinned: partial sums may not exceed the extinction probability"},
    {"tail_band.eps2_coeff", 3.0, "exact calibration: N=2000 eps=0.05 ell=1e4 gives |tail-2eps|=6.25e-3 vs bound 2.75e-2"},
    {"tail_band.inv_sqrt_ell_coeff", 2.0, "exact calibration: same grid point as tail_band.eps2_coeff"},
    {"extinction.eps2_coeff", 5.0, "exact calibration: N=1e4, eps in {0.005,0.01,0.02,0.05}, max |1-a-2eps|/eps^2 = 2.62"},
    {"giant.zeta_rel_tol", 0.10, "pinned: median cmax/V within 10% of zeta(Omega,p)"},
    {"giant.two_eps_low", 0.80, "pilot runs n=300 eps=0.15 (median cmax/(2 eps V) 0.796..0.827 over 9 seeds, one below 0.80, zeta/(2 eps) = 0.831)"},
    {"giant.two_eps_high", 1.05, "pilot runs n=300 eps=0.15 (median cmax/(2 eps V) 0.796..0.827 over 9 seeds, one below 0.80, zeta/(2 eps) = 0.831)"},
    {"cluster_tail.rel_tol", 0.10, "pinned: P(|C| >= eta V) within 10% of zeta(Omega,p)"},
    {"cluster_tail.domination_std_errors", 3.0, "pinned: empirical tail may exceed the GW tail by < 3 se"},
    {"sprinkle.min_merged_fraction", 0.95, "pinned: merged after sprinkling in >= 95% of replicas"},
    {"sprinkle.min_cmax_over_zprime", 0.99, "pinned: post-sprinkle cmax >= 0.99 Z'"},
    {"good_lines.line_fraction", 0.75, "pinned: >= 3n/4 good horizontal lines per large cluster"},
    {"good_lines.min_replica_fraction", 0.95, "pinned: good-line property in >= 95% of replicas"},
    {"chi.rel_tol", 0.15, "pinned: subcritical chi within 15% of 1/|eps|"},
    {"critical.low", 0.1, "pinned: cmax / V^(2/3) lower edge"},
    {"critical.high", 10.0, "pinned: cmax / V^(2/3) upper edge"},
    {"critical.min_fraction", 0.90, "pinned: fraction of replicas inside the window"},
    {"concentration.max_normalized_sd", 0.15, "pilot runs n=300 eps=0.15 k=V^(2/3), 30 replicas: sd/(eps V) 0.07..0.09"},
};

constexpr ThresholdFixture kFixture{"thresholds-v1", kThresholdTable};

double sample_mean(std::span<const double> xs)
{
    return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs)
{
    if (xs.size() < 2) {
        return 0.0;
    }
    const double m = sample_mean(xs);
    double ss = 0.0;
    for (const double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_d2(const PercolationConfig& cfg, const char* what)
{
    if (cfg.graph().dimension() != 2) {
        throw std::domain_error(std::string(what) + ": exploration estimators require d = 2");
    }
}

} // namespace

//---------------------------------------------------------------------------//

Estimate Estimate::from_samples(std::span<const double> xs)
{
    Estimate e;
    e.n_samples = xs.size();
    e.mean = sample_mean(xs);
    e.std_error = xs.empty() ? 0.0 : sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
    e.ci95_low = e.mean - kZ95 * e.std_error;
    e.ci95_high = e.mean + kZ95 * e.std_error;
    return e;
}

Estimate Estimate::bernoulli(std::uint64_t successes, std::uint64_t trials)
{
    Estimate e;
    e.n_samples = trials;
    if (trials == 0) {
        return e;
    }
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    e.mean = ph;
    e.std_error = std::sqrt(ph * (1.0 - ph) / n);
    e.ci95_low = e.mean - kZ95 * e.std_error;
    e.ci95_high = e.mean + kZ95 * e.std_error;
    const double z2 = kZ95 * kZ95;
    const double centre = (ph + z2 / (2 * n)) / (1 + z2 / n);
    const double half = kZ95 / (1 + z2 / n) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
    e.wilson_low = std::max(0.0, centre - half);
    e.wilson_high = std::min(1.0, centre + half);
    return e;
}

nlohmann::json to_json(const Estimate& e)
{
    nlohmann::json j{{"mean", e.mean},
                     {"std_error", e.std_error},
                     {"n_samples", e.n_samples},
                     {"ci95_low", e.ci95_low},
                     {"ci95_high", e.ci95_high}};
    if (e.wilson_low) {
        j["wilson95_low"] = *e.wilson_low;
        j["wilson95_high"] = *e.wilson_high;
    }
    return j;
}

const Threshold& ThresholdFixture::get(std::string_view name) const
{
    for (const Threshold& t : entries) {
        if (t.name == name) {
            return t;
        }
    }
    throw std::out_of_range("unknown threshold '" + std::string(name) + "'");
}

const ThresholdFixture& thresholds()
{
    return kFixture;
}

nlohmann::json thresholds_json(std::initializer_list<std::string_view> names)
{
    nlohmann::json out = nlohmann::json::object();
    out["fixture_version"] = std::string(kFixture.version);
    for (const std::string_view name : names) {
        const Threshold& t = kFixture.get(name);
        out[std::string(name)] = {{"value", t.value}, {"calibrated_by", std::string(t.calibrated_by)}};
    }
    return out;
}

double median(std::vector<double> xs)
{
    if (xs.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

//---------------------------------------------------------------------------//

ReplicaSummary simulate_replica(const PercolationConfig& cfg, std::uint64_t replica, std::span<const std::uint64_t> ks,
                                std::optional<double> eta)
{
    const auto start = std::chrono::steady_clock::now();
    const HammingGraph& g = cfg.graph();
    const bool want_lines = eta.has_value() && g.dimension() == 2;
    const OccupiedEdgeSet edges = sample_configuration(cfg, replica);
    const ClusterStats stats = connected_components(g, edges, want_lines);

    ReplicaSummary s;
    s.seed = cfg.seed();
    s.replica = replica;
    s.cmax = stats.cmax;
    s.c2 = stats.c2;
    s.clusters = stats.cluster_count();
    s.occupied = edges.total_occupied();
    for (const std::uint64_t k : ks) {
        s.z_geq_table.emplace_back(k, z_geq(stats, k));
    }
    if (want_lines) {
        const double volume = static_cast<double>(g.vertex_count());
        const auto large = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(*eta * volume)));
        const auto good = static_cast<std::uint64_t>(std::ceil(*eta * volume / (4.0 * g.side())));
        for (const auto& [id, count] : large_cluster_good_lines(g, stats, large, good)) {
            s.good_lines.push_back(count);
        }
    }
    s.wall_time = seconds_since(start);
    return s;
}

std::vector<ReplicaSummary> run_replicas(const PercolationConfig& cfg, std::span<const std::uint64_t> ks,
                                         std::uint64_t replicas, unsigned threads, std::optional<double> eta)
{
    std::vector<ReplicaSummary> out(replicas);
    parallel_for(replicas, threads, [&](std::uint64_t r) { out[r] = simulate_replica(cfg, r, ks, eta); });
    return out;
}

//---------------------------------------------------------------------------//

namespace {

// Runs `samples` explorations split into fixed blocks; block b reuses one
// Explorer. Exploration i draws its origin and coin flips from stream i.
template <class PerSample>
void for_each_exploration(const PercolationConfig& cfg, std::uint64_t cap, std::uint64_t samples, unsigned threads,
                          PerSample&& per_sample)
{
    const std::uint64_t volume = cfg.graph().vertex_count();
    const std::uint64_t block = 256;
    const std::uint64_t blocks = (samples + block - 1) / block;
    parallel_for(blocks, threads, [&](std::uint64_t b) {
        Explorer explorer(cfg.graph());
        for (std::uint64_t i = b * block; i < std::min(samples, (b + 1) * block); ++i) {
            Rng rng = cfg.rng(i);
            const VertexId origin = rng.below(volume);
            per_sample(i, explorer.run(cfg.p(), origin, cap, rng));
        }
    });
}

} // namespace

Estimate estimate_chi(const PercolationConfig& cfg, std::uint64_t samples, unsigned threads)
{
    check_d2(cfg, "estimate_chi");
    if (samples == 0) {
        throw std::domain_error("estimate_chi: samples must be at least 1");
    }
    std::vector<double> sizes(samples);
    for_each_exploration(cfg, cfg.graph().vertex_count(), samples, threads,
                         [&](std::uint64_t i, const ExplorationResult& r) {
                             sizes[i] = static_cast<double>(r.cluster_size);
                         });
    return Estimate::from_samples(sizes);
}

std::vector<Estimate> estimate_cluster_tails(const PercolationConfig& cfg, std::span<const std::uint64_t> ks,
                                             std::uint64_t samples, unsigned threads)
{
    check_d2(cfg, "estimate_cluster_tail");
    if (samples == 0) {
        throw std::domain_error("estimate_cluster_tail: samples must be at least 1");
    }
    std::uint64_t cap = 1;
    for (const std::uint64_t k : ks) {
        if (k == 0 || k > cfg.graph().vertex_count()) {
            throw std::domain_error("estimate_cluster_tail: k must lie in [1, V]");
        }
        cap = std::max(cap, k);
    }
    std::vector<std::uint64_t> steps(samples);
    for_each_exploration(cfg, cap, samples, threads,
                         [&](std::uint64_t i, const ExplorationResult& r) { steps[i] = r.steps; });
    std::vector<Estimate> out;
    for (const std::uint64_t k : ks) {
        const auto hits = static_cast<std::uint64_t>(
            std::count_if(steps.begin(), steps.end(), [&](std::uint64_t t) { return t >= k; }));
        out.push_back(Estimate::bernoulli(hits, samples));
    }
    return out;
}

Estimate estimate_cluster_tail(const PercolationConfig& cfg, std::uint64_t k, std::uint64_t samples, unsigned threads)
{
    const std::uint64_t ks[] = {k};
    return estimate_cluster_tails(cfg, ks, samples, threads).front();
}

std::vector<ExplorationSample> sample_explorations(const PercolationConfig& cfg, std::uint64_t cap,
                                                   std::uint64_t samples, std::uint64_t good_threshold,
                                                   unsigned threads)
{
    check_d2(cfg, "sample_explorations");
    std::vector<ExplorationSample> out(samples);
    for_each_exploration(cfg, cap, samples, threads, [&](std::uint64_t i, const ExplorationResult& r) {
        out[i].origin = r.origin;
        out[i].steps = r.steps;
        out[i].cluster_size = r.cluster_size;
        out[i].died_out = r.died_out;
        out[i].max_horizontal = *std::max_element(r.horiz_counts.begin(), r.horiz_counts.end());
        out[i].good_lines = good_line_count(r, good_threshold);
    });
    return out;
}

//---------------------------------------------------------------------------//

ZConcentrationReport z_concentration_report(const PercolationConfig& cfg, std::uint64_t k,
                                            std::span<const ReplicaSummary> runs)
{
    if (runs.size() < 2) {
        throw std::domain_error("z_concentration_report: needs at least 2 replicas");
    }
    ZConcentrationReport rep;
    rep.k = k;
    std::vector<double> xs;
    for (const ReplicaSummary& s : runs) {
        const auto it = std::find_if(s.z_geq_table.begin(), s.z_geq_table.end(),
                                     [&](const auto& kv) { return kv.first == k; });
        if (it == s.z_geq_table.end()) {
            throw std::invalid_argument("z_concentration_report: replica lacks Z_{>=" + std::to_string(k) + "}");
        }
        rep.values.push_back(it->second);
        xs.push_back(static_cast<double>(it->second));
    }
    rep.mean = sample_mean(xs);
    rep.sd = sample_sd(xs);
    const double scale = std::fabs(cfg.epsilon()) * static_cast<double>(cfg.graph().vertex_count());
    rep.normalized_sd = scale > 0.0 ? rep.sd / scale : std::numeric_limits<double>::quiet_NaN();
    rep.threshold = thresholds()["concentration.max_normalized_sd"];
    rep.pass = rep.sd == 0.0 || rep.normalized_sd <= rep.threshold;
    return rep;
}

ZConcentrationReport z_concentration_report(const PercolationConfig& cfg, std::uint64_t k, std::uint64_t replicas,
                                            unsigned threads)
{
    if (k == 0) {
        throw std::domain_error("z_concentration_report: k must be at least 1");
    }
    const std::uint64_t ks[] = {k};
    const auto runs = run_replicas(cfg, ks, replicas, threads);
    return z_concentration_report(cfg, k, runs);
}

nlohmann::json ZConcentrationReport::to_json() const
{
    return {{"k", k},
            {"values", values},
            {"mean", mean},
            {"sd", sd},
            {"normalized_sd", std::isnan(normalized_sd) ? nlohmann::json(nullptr) : nlohmann::json(normalized_sd)},
            {"threshold", threshold},
            {"pass", pass},
            {"thresholds", thresholds_json({"concentration.max_normalized_sd"})}};
}

GiantLlnReport giant_lln_report(const PercolationConfig& cfg, std::span<const ReplicaSummary> runs)
{
    if (!(cfg.epsilon() > 0.0)) {
        throw std::domain_error("giant_lln_report: requires epsilon > 0");
    }
    const auto& fx = thresholds();
    const double volume = static_cast<double>(cfg.graph().vertex_count());
    GiantLlnReport rep;
    rep.zeta = survival_probability(GWSpec(cfg.graph().degree(), cfg.p()));
    rep.two_eps = 2.0 * cfg.epsilon();
    const double tol = fx["giant.zeta_rel_tol"];
    const double lo = fx["giant.two_eps_low"];
    const double hi = fx["giant.two_eps_high"];
    std::uint64_t within = 0, banded = 0;
    for (const ReplicaSummary& s : runs) {
        const double f = static_cast<double>(s.cmax) / volume;
        rep.cmax_fraction.push_back(f);
        within += std::fabs(f / rep.zeta - 1.0) <= tol;
        const double r = f / rep.two_eps;
        banded += r >= lo && r <= hi;
    }
    const auto count = static_cast<double>(std::max<std::size_t>(runs.size(), 1));
    rep.fraction_within_zeta = static_cast<double>(within) / count;
    rep.fraction_in_two_eps_band = static_cast<double>(banded) / count;
    rep.median_fraction = median(rep.cmax_fraction);
    rep.median_over_zeta = rep.median_fraction / rep.zeta;
    rep.median_over_two_eps = rep.median_fraction / rep.two_eps;
    rep.pass_zeta = std::fabs(rep.median_over_zeta - 1.0) <= tol;
    rep.pass_two_eps = rep.median_over_two_eps >= lo && rep.median_over_two_eps <= hi;
    rep.pass = rep.pass_zeta && rep.pass_two_eps;
    return rep;
}

GiantLlnReport giant_lln_report(const PercolationConfig& cfg, std::uint64_t replicas, unsigned threads)
{
    if (!(cfg.epsilon() > 0.0)) {
        throw std::domain_error("giant_lln_report: requires epsilon > 0");
    }
    const auto runs = run_replicas(cfg, {}, replicas, threads);
    return giant_lln_report(cfg, runs);
}

nlohmann::json GiantLlnReport::to_json() const
{
    return {{"cmax_fraction", cmax_fraction},
            {"zeta", zeta},
            {"two_eps", two_eps},
            {"median_fraction", median_fraction},
            {"median_over_zeta", median_over_zeta},
            {"median_over_two_eps", median_over_two_eps},
            {"fraction_within_zeta", fraction_within_zeta},
            {"fraction_in_two_eps_band", fraction_in_two_eps_band},
            {"pass_zeta", pass_zeta},
            {"pass_two_eps", pass_two_eps},
            {"pass", pass},
            {"thresholds", thresholds_json({"giant.zeta_rel_tol", "giant.two_eps_low", "giant.two_eps_high"})}};
}

DualityReport duality_diagnostic(const PercolationConfig& cfg, std::span<const ReplicaSummary> runs)
{
    const double eps = std::fabs(cfg.epsilon());
    const double volume = static_cast<double>(cfg.graph().vertex_count());
    if (!(eps > 0.0) || !(eps * eps * eps * volume > 1.0)) {
        throw std::domain_error("duality_diagnostic: requires |eps|^3 V > 1");
    }
    DualityReport rep;
    const double scale = eps * eps / (2.0 * std::log(eps * eps * eps * volume));
    for (const ReplicaSummary& s : runs) {
        rep.ratio.push_back(static_cast<double>(s.c2) * scale);
    }
    rep.median_ratio = median(rep.ratio);
    return rep;
}

DualityReport duality_diagnostic(const PercolationConfig& cfg, std::uint64_t replicas, unsigned threads)
{
    const auto runs = run_replicas(cfg, {}, replicas, threads);
    return duality_diagnostic(cfg, runs);
}

nlohmann::json DualityReport::to_json() const
{
    return {{"ratio", ratio}, {"median_ratio", median_ratio}, {"informational", true}};
}

} // namespace hamperc
