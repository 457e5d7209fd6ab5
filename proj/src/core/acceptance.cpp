#include "hamperc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hamperc/branching.hpp"
#include "hamperc/brute_force.hpp"
#include "hamperc/numeric.hpp"
#include "hamperc/parallel.hpp"
#include "hamperc/statistics.hpp"

namespace hamperc {

namespace {

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

CriterionResult exact_oracle(const AcceptanceOptions& opts)
{
    CriterionResult r{1, "exact-oracle equivalence on H(2,3)", true, {}, nlohmann::json::array(), 0};
    const HammingGraph g(2, 3);
    const double bound = thresholds()["oracle.max_std_errors"];
    const std::uint64_t samples = 100000;
    const std::vector<std::uint64_t> ks{2, 4, 6};
    double worst = 0.0;
    for (const double p : {0.1, 0.25, 0.5}) {
        const auto cfg = PercolationConfig::from_probability(g, p, opts.seed + 1);
        const auto check = [&](const std::string& what, const Estimate& mc, double exact) {
            const double z = mc.std_error > 0 ? std::fabs(mc.mean - exact) / mc.std_error
                                              : (mc.mean == exact ? 0.0 : INFINITY);
            worst = std::max(worst, z);
            const bool ok = z <= bound;
            r.pass = r.pass && ok;
            r.data.push_back({{"p", p},
                              {"quantity", what},
                              {"exact", exact},
                              {"estimate", to_json(mc)},
                              {"z", z},
                              {"pass", ok}});
        };
        const auto runs = run_replicas(cfg, {}, samples, opts.threads);
        std::vector<double> cmax;
        for (const ReplicaSummary& s : runs) {
            cmax.push_back(static_cast<double>(s.cmax));
        }
        check("E[cmax]", Estimate::from_samples(cmax), exact_expectation(g, p, Functional::cmax(), opts.threads).value);
        check("chi", estimate_chi(cfg, samples, opts.threads),
              exact_expectation(g, p, Functional::chi(0), opts.threads).value);
        const auto tails = estimate_cluster_tails(cfg, ks, samples, opts.threads);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            check("P(|C|>=" + std::to_string(ks[i]) + ")", tails[i],
                  exact_expectation(g, p, Functional::cluster_tail(0, ks[i]), opts.threads).value);
        }
    }
    r.detail = fmt("15 comparisons, max |MC - exact| = %.2f se (bound %.0f se)", worst, bound);
    return r;
}

CriterionResult otter_dwass(const AcceptanceOptions&)
{
    CriterionResult r{2, "Otter-Dwass partial sums vs extinction", false, {}, {}, 0};
    const GWSpec spec = GWSpec::from_epsilon(2000, 0.05);
    const double a = extinction_probability(spec);
    const std::uint64_t K = 1'000'000;
    CompensatedSum sum;
    double max_excess = -INFINITY;
    for (std::uint64_t k = 1; k <= K; ++k) {
        sum += progeny_pmf(spec, k);
        max_excess = std::max(max_excess, sum.value() - a);
    }
    const double gap = std::fabs(sum.value() - a);
    const double gap_bound = thresholds()["otter_dwass.max_gap"];
    const double excess_bound = thresholds()["otter_dwass.max_excess"];
    r.pass = gap <= gap_bound && max_excess <= excess_bound;
    r.detail = fmt("|sum_{k<=1e6} - a| = %.3g (bound %.0g), max(partial - a) = %.3g", gap, gap_bound, max_excess) +
               fmt(" (bound %.0g)", excess_bound);
    r.data = {{"N", 2000}, {"epsilon", 0.05}, {"K", K}, {"extinction", a}, {"partial", sum.value()},
              {"gap", gap}, {"max_excess", max_excess}};
    return r;
}

CriterionResult tail_band(const AcceptanceOptions&)
{
    CriterionResult r{3, "near-critical tail band", false, {}, {}, 0};
    const double eps = 0.05;
    const std::uint64_t ell = 10000;
    const double tail = tail_probability(GWSpec::from_epsilon(2000, eps), ell);
    const double bound = thresholds()["tail_band.eps2_coeff"] * eps * eps +
                         thresholds()["tail_band.inv_sqrt_ell_coeff"] / std::sqrt(static_cast<double>(ell));
    const double dev = std::fabs(tail - 2 * eps);
    r.pass = dev <= bound;
    r.detail = fmt("P(F >= 1e4) = %.10f, |tail - 2 eps| = %.3g (bound %.3g)", tail, dev, bound);
    r.data = {{"N", 2000}, {"epsilon", eps}, {"ell", ell}, {"tail", tail}, {"deviation", dev}, {"bound", bound}};
    return r;
}

CriterionResult extinction_asymptotic(const AcceptanceOptions&)
{
    CriterionResult r{4, "extinction asymptotic 1 - a = 2 eps + O(eps^2)", true, {}, nlohmann::json::array(), 0};
    const double c = thresholds()["extinction.eps2_coeff"];
    double worst = 0.0;
    for (const double eps : {0.005, 0.01, 0.02, 0.05}) {
        const double a = extinction_probability(GWSpec::from_epsilon(10000, eps));
        const double ratio = std::fabs((1 - a) - 2 * eps) / (eps * eps);
        worst = std::max(worst, ratio);
        r.pass = r.pass && ratio <= c;
        r.data.push_back({{"epsilon", eps}, {"survival", 1 - a}, {"ratio_to_eps2", ratio}});
    }
    r.detail = fmt("max |(1 - a) - 2 eps| / eps^2 = %.3f over eps in {.005,.01,.02,.05} (bound %.0f)", worst, c);
    return r;
}

CriterionResult giant(const AcceptanceOptions& opts)
{
    CriterionResult r{5, "giant component LLN", false, {}, {}, 0};
    const PercolationConfig cfg(HammingGraph(2, 300), 0.15, opts.seed + 5);
    const GiantLlnReport rep = giant_lln_report(cfg, 30, opts.threads);
    r.pass = rep.pass;
    r.detail = fmt("median cmax/V = %.4f, / zeta = %.4f, / (2 eps) = %.4f", rep.median_fraction, rep.median_over_zeta,
                   rep.median_over_two_eps) +
               " (bands |x - 1| <= 0.10 and [0.80, 1.05])";
    r.data = rep.to_json();
    return r;
}

CriterionResult cluster_tail(const AcceptanceOptions& opts)
{
    CriterionResult r{6, "cluster tail P(|C| >= eta V)", false, {}, {}, 0};
    const HammingGraph g(2, 300);
    const PercolationConfig cfg(g, 0.15, opts.seed + 6);
    const double eta = default_eta(0.15, g.vertex_count());
    const auto k = static_cast<std::uint64_t>(std::ceil(eta * static_cast<double>(g.vertex_count())));
    const Estimate est = estimate_cluster_tail(cfg, k, 10000, opts.threads);
    const GWSpec gw(g.degree(), cfg.p());
    const double zeta = survival_probability(gw);
    const double tail = tail_probability(gw, k);
    const double rel = est.mean / zeta - 1.0;
    const double tol = thresholds()["cluster_tail.rel_tol"];
    const double dom = thresholds()["cluster_tail.domination_std_errors"];
    const bool within = std::fabs(rel) <= tol;
    const bool dominated = est.mean - dom * est.std_error <= tail;
    r.pass = within && dominated;
    r.detail = fmt("estimate %.4f vs zeta %.4f (rel %+.3f, bound 0.10)", est.mean, zeta, rel) +
               fmt("; GW tail %.4f, excess %.2f se (bound 3)", tail, (est.mean - tail) / est.std_error);
    r.data = {{"eta", eta}, {"k", k}, {"estimate", to_json(est)}, {"zeta", zeta}, {"gw_tail", tail},
              {"relative_error", rel}, {"within", within}, {"dominated", dominated},
              {"thresholds", thresholds_json({"cluster_tail.rel_tol", "cluster_tail.domination_std_errors"})}};
    return r;
}

std::vector<SprinklingReport> sprinkle_runs(const AcceptanceOptions& opts, double& eta)
{
    const HammingGraph g(2, 500);
    const PercolationConfig cfg(g, 0.1, opts.seed + 7);
    eta = default_eta(0.1, g.vertex_count());
    std::vector<SprinklingReport> out(20);
    const double e = eta;
    parallel_for(out.size(), opts.threads, [&](std::uint64_t i) { out[i] = two_round_exposure(cfg, e, i); });
    return out;
}

CriterionResult sprinkling(const AcceptanceOptions& opts)
{
    CriterionResult r{7, "sprinkling merges the large clusters", false, {}, nlohmann::json::array(), 0};
    double eta = 0;
    const auto runs = sprinkle_runs(opts, eta);
    const double min_frac = thresholds()["sprinkle.min_merged_fraction"];
    const double ratio = thresholds()["sprinkle.min_cmax_over_zprime"];
    int merged = 0;
    bool covers = true;
    for (const SprinklingReport& s : runs) {
        merged += s.merged_after;
        if (s.merged_after) {
            covers = covers && static_cast<double>(s.cmax_after) >= ratio * static_cast<double>(s.z_prime);
        }
        r.data.push_back({{"large_clusters", s.clusters_before.size()}, {"z_prime", s.z_prime},
                          {"merged_after", s.merged_after}, {"cmax_after", s.cmax_after}});
    }
    const double frac = merged / static_cast<double>(runs.size());
    r.pass = frac >= min_frac && covers;
    r.detail = fmt("merged in %.0f/20 replicas (need %.0f%%)", merged, 100 * min_frac) +
               (covers ? "; cmax_after >= 0.99 Z' in every merged replica" : "; cmax_after < 0.99 Z' somewhere");
    return r;
}

CriterionResult good_lines(const AcceptanceOptions& opts)
{
    CriterionResult r{8, "good lines of large clusters", false, {}, nlohmann::json::array(), 0};
    double eta = 0;
    const auto runs = sprinkle_runs(opts, eta);
    const double need = thresholds()["good_lines.line_fraction"] * 500;
    const double min_frac = thresholds()["good_lines.min_replica_fraction"];
    int ok = 0, vacuous = 0;
    std::uint64_t fewest = 500;
    for (const SprinklingReport& s : runs) {
        bool all = true;
        for (const std::uint64_t lines : s.good_lines) {
            all = all && static_cast<double>(lines) >= need;
            fewest = std::min(fewest, lines);
        }
        ok += all;
        vacuous += s.good_lines.empty();
        r.data.push_back({{"good_lines", s.good_lines}, {"threshold", s.good_line_threshold}});
    }
    r.pass = ok / static_cast<double>(runs.size()) >= min_frac;
    r.detail = fmt("%.0f/20 replicas with >= 375 good lines per large cluster (fewest %.0f, line threshold %.0f)", ok,
                   static_cast<double>(fewest), static_cast<double>(runs.front().good_line_threshold));
    if (vacuous > 0) {
        r.detail += "; " + std::to_string(vacuous) + " replicas had no large cluster";
    }
    return r;
}

CriterionResult subcritical_chi(const AcceptanceOptions& opts)
{
    CriterionResult r{9, "subcritical mean cluster size", false, {}, {}, 0};
    const PercolationConfig cfg(HammingGraph(2, 300), -0.2, opts.seed + 9);
    const Estimate est = estimate_chi(cfg, 10000, opts.threads);
    const double tol = thresholds()["chi.rel_tol"];
    const double rel = est.mean / 5.0 - 1.0;
    r.pass = std::fabs(rel) <= tol;
    r.detail = fmt("chi = %.4f +- %.4f vs 1/|eps| = 5 (rel %+.3f, bound 0.15)", est.mean, est.std_error, rel);
    r.data = {{"estimate", to_json(est)}, {"relative_error", rel}, {"thresholds", thresholds_json({"chi.rel_tol"})}};
    return r;
}

CriterionResult critical_window(const AcceptanceOptions& opts)
{
    CriterionResult r{10, "critical window cmax ~ V^(2/3)", false, {}, {}, 0};
    const PercolationConfig cfg(HammingGraph(2, 300), 0.0, opts.seed + 10);
    const auto runs = run_replicas(cfg, {}, 30, opts.threads);
    const double lo = thresholds()["critical.low"], hi = thresholds()["critical.high"];
    const double scale = std::pow(90000.0, 2.0 / 3.0);
    std::vector<double> ratios;
    int inside = 0;
    for (const ReplicaSummary& s : runs) {
        const double x = static_cast<double>(s.cmax) / scale;
        ratios.push_back(x);
        inside += x >= lo && x <= hi;
    }
    r.pass = inside / 30.0 >= thresholds()["critical.min_fraction"];
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    r.detail = fmt("%.0f/30 replicas with cmax/V^(2/3) in [0.1, 10] (observed %.3f .. %.3f)", inside, *mn, *mx);
    r.data = {{"ratios", ratios}, {"inside", inside}};
    return r;
}

CriterionResult concentration(const AcceptanceOptions& opts)
{
    CriterionResult r{11, "concentration of Z_{>=k}", false, {}, {}, 0};
    const PercolationConfig cfg(HammingGraph(2, 300), 0.15, opts.seed + 11);
    const auto k = static_cast<std::uint64_t>(std::ceil(std::pow(90000.0, 2.0 / 3.0)));
    const ZConcentrationReport rep = z_concentration_report(cfg, k, 30, opts.threads);
    r.pass = rep.pass;
    r.detail = fmt("k = %.0f, sd(Z)/(eps V) = %.4f (bound %.2f)", static_cast<double>(k), rep.normalized_sd,
                   rep.threshold);
    r.data = rep.to_json();
    return r;
}

} // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts)
{
    using Fn = CriterionResult (*)(const AcceptanceOptions&);
    static constexpr Fn table[] = {exact_oracle, otter_dwass,   tail_band,       extinction_asymptotic,
                                   giant,        cluster_tail,  sprinkling,      good_lines,
                                   subcritical_chi, critical_window, concentration};
    if (id < 1 || id > kCriterionCount) {
        throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    }
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = table[id - 1](opts);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id, opts));
        if (on_result) {
            on_result(out.back());
        }
    }
    return out;
}

nlohmann::json duality_acceptance_report(const AcceptanceOptions& opts, std::uint64_t replicas)
{
    const PercolationConfig cfg(HammingGraph(2, 500), 0.1, opts.seed + 12);
    const DualityReport rep = duality_diagnostic(cfg, replicas, opts.threads);
    nlohmann::json j = rep.to_json();
    j["n"] = 500;
    j["epsilon"] = 0.1;
    return j;
}

std::string format_result_line(const CriterionResult& r)
{
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s  ", r.id, r.pass ? "PASS" : "FAIL");
    char tail[48];
    std::snprintf(tail, sizeof tail, "  [%.1f s]", r.seconds);
    return head + r.name + ": " + r.detail + tail;
}

} // namespace hamperc
