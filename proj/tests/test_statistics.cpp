#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hamperc/branching.hpp"
#include "hamperc/statistics.hpp"

using namespace hamperc;

namespace {

// exact H(2,3) values at p = 1/4 (tests/oracles/h23_exact.py)
constexpr double kChiH23 = 3.245885432290379;
constexpr double kTail4H23 = 0.3749122619628906;

} // namespace

TEST_CASE("Estimate from samples")
{
    const std::vector<double> xs{1, 2, 3, 4};
    const Estimate e = Estimate::from_samples(xs);
    CHECK(e.mean == 2.5);
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
    CHECK(e.ci95_low == doctest::Approx(2.5 - 1.96 * e.std_error));
    CHECK(e.ci95_high == doctest::Approx(2.5 + 1.96 * e.std_error));
    CHECK_FALSE(e.wilson_low.has_value());
    const std::vector<double> same(10, 3.0);
    CHECK(Estimate::from_samples(same).std_error == 0.0);
}

TEST_CASE("Bernoulli estimate carries a Wilson interval")
{
    const Estimate e = Estimate::bernoulli(20, 100);
    CHECK(e.mean == 0.2);
    CHECK(e.std_error == doctest::Approx(0.04));
    // Wilson 95% for 20/100: [0.1333, 0.2888] (standard tables)
    CHECK(*e.wilson_low == doctest::Approx(0.13329).epsilon(1e-3));
    CHECK(*e.wilson_high == doctest::Approx(0.28878).epsilon(1e-3));
    const Estimate zero = Estimate::bernoulli(0, 50);
    CHECK(zero.std_error == 0.0);
    CHECK(*zero.wilson_low == 0.0);
    CHECK(*zero.wilson_high > 0.0);
    const auto j = to_json(e);
    CHECK(j.contains("wilson95_low"));
    CHECK(j["n_samples"] == 100);
}

TEST_CASE("threshold fixture")
{
    const ThresholdFixture& fx = thresholds();
    CHECK(fx.version == "thresholds-v1");
    CHECK(fx["chi.rel_tol"] == 0.15);
    CHECK(fx["concentration.max_normalized_sd"] == 0.15);
    CHECK_THROWS_AS(fx.get("nope"), std::out_of_range);
    for (const Threshold& t : fx.entries) {
        CHECK_FALSE(t.calibrated_by.empty());
    }
    const auto j = thresholds_json({"giant.zeta_rel_tol"});
    CHECK(j["fixture_version"] == "thresholds-v1");
    CHECK(j["giant.zeta_rel_tol"]["value"] == 0.10);
}

TEST_CASE("median")
{
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK(std::isnan(median({})));
}

TEST_CASE("chi")
{
    const Estimate z = estimate_chi(PercolationConfig(HammingGraph(2, 20), -1.0, 1), 500);
    CHECK(z.mean == 1.0);
    CHECK(z.std_error == 0.0);

    const PercolationConfig tiny = PercolationConfig::from_probability(HammingGraph(2, 3), 0.25, 4242);
    const Estimate e = estimate_chi(tiny, 100000);
    CHECK(std::fabs(e.mean - kChiH23) <= 3 * e.std_error);

    const Estimate sub = estimate_chi(PercolationConfig(HammingGraph(2, 300), -0.2, 9), 10000);
    CHECK(std::fabs(sub.mean / 5.0 - 1.0) <= 0.15);

    CHECK_THROWS_AS(estimate_chi(tiny, 0), std::domain_error);
    CHECK_THROWS_AS(estimate_chi(PercolationConfig(HammingGraph(3, 3), 0.0, 1), 10), std::domain_error);
}

TEST_CASE("cluster tail")
{
    const PercolationConfig tiny = PercolationConfig::from_probability(HammingGraph(2, 3), 0.25, 31337);
    CHECK(estimate_cluster_tail(tiny, 1, 1000).mean == 1.0);
    const Estimate e = estimate_cluster_tail(tiny, 4, 100000);
    CHECK(std::fabs(e.mean - kTail4H23) <= 3 * e.std_error);
    CHECK_THROWS_AS(estimate_cluster_tail(tiny, 0, 10), std::domain_error);
    CHECK_THROWS_AS(estimate_cluster_tail(tiny, 10, 10), std::domain_error);
}

TEST_CASE("coupled tails are nonincreasing in k")
{
    const PercolationConfig cfg(HammingGraph(2, 100), 0.1, 3);
    const std::vector<std::uint64_t> ks{1, 2, 5, 20, 100, 1000, 5000};
    const auto est = estimate_cluster_tails(cfg, ks, 5000);
    for (std::size_t i = 1; i < est.size(); ++i) {
        CHECK(est[i].mean <= est[i - 1].mean);
    }
    CHECK(est[0].mean == 1.0);
}

TEST_CASE("cluster tail is dominated by the Bin(Omega, p) branching tail")
{
    const PercolationConfig cfg(HammingGraph(2, 100), 0.1, 17);
    const GWSpec gw(cfg.graph().degree(), cfg.p());
    const std::vector<std::uint64_t> ks{2, 3, 5, 10, 30, 100, 300, 1000, 3000};
    const auto est = estimate_cluster_tails(cfg, ks, 40000);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        INFO("ell = " << ks[i]);
        CHECK(est[i].mean - 3 * est[i].std_error <= tail_probability(gw, ks[i]));
    }
}

TEST_CASE("replicas are deterministic and independent of the thread count")
{
    const PercolationConfig cfg(HammingGraph(2, 60), 0.2, 5);
    const std::vector<std::uint64_t> ks{1, 10, 100};
    const auto a = run_replicas(cfg, ks, 6, 1);
    const auto b = run_replicas(cfg, ks, 6, 3);
    REQUIRE(a.size() == 6);
    for (std::size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].replica == r);
        CHECK(a[r].cmax == b[r].cmax);
        CHECK(a[r].c2 == b[r].c2);
        CHECK(a[r].z_geq_table == b[r].z_geq_table);
        CHECK(a[r].cmax >= a[r].c2);
        CHECK(a[r].z_geq_table[0].second == 3600);
        CHECK(a[r].z_geq_table[1].second >= a[r].z_geq_table[2].second);
    }
}

TEST_CASE("concentration report")
{
    const PercolationConfig zero(HammingGraph(2, 30), -1.0, 1);
    const auto r2 = z_concentration_report(zero, 2, 5);
    CHECK(r2.sd == 0.0);
    CHECK(r2.mean == 0.0);
    CHECK(r2.pass);
    const auto r1 = z_concentration_report(zero, 1, 5);
    CHECK(r1.mean == 900.0);
    CHECK(r1.sd == 0.0);
    CHECK(r1.pass);
    CHECK_THROWS_AS(z_concentration_report(zero, 1, 1), std::domain_error);

    const PercolationConfig cfg(HammingGraph(2, 300), 0.15, 2026);
    const auto k = static_cast<std::uint64_t>(std::ceil(std::pow(90000.0, 2.0 / 3.0)));
    const auto rep = z_concentration_report(cfg, k, 30);
    CHECK(rep.normalized_sd <= 0.15);
    CHECK(rep.pass);
    CHECK(rep.to_json()["thresholds"]["fixture_version"] == "thresholds-v1");
}

TEST_CASE("giant component report")
{
    const HammingGraph g(2, 20);
    const auto full = giant_lln_report(PercolationConfig::from_probability(g, 1.0, 1), 4);
    for (const double f : full.cmax_fraction) {
        CHECK(f == 1.0);
    }
    CHECK_THROWS_AS(giant_lln_report(PercolationConfig(g, 0.0, 1), 3), std::domain_error);

    const auto rep = giant_lln_report(PercolationConfig(HammingGraph(2, 300), 0.15, 11), 30);
    CHECK(std::fabs(rep.median_over_zeta - 1.0) <= 0.10);
    CHECK(rep.pass_zeta);

    const auto big = giant_lln_report(PercolationConfig(HammingGraph(2, 500), 0.1, 12), 30);
    CHECK(big.median_over_two_eps >= 0.8);
    CHECK(big.median_over_two_eps <= 1.05);
}

TEST_CASE("duality diagnostic")
{
    const HammingGraph g(2, 20);
    const auto full = duality_diagnostic(PercolationConfig::from_probability(g, 1.0, 1), 3);
    CHECK(full.median_ratio == 0.0);
    // p = 0: c2 = 1 and |eps| = 1, so the ratio is 1 / (2 log V)
    const auto empty = duality_diagnostic(PercolationConfig(g, -1.0, 1), 3);
    CHECK(empty.median_ratio == doctest::Approx(1.0 / (2.0 * std::log(400.0))));
    CHECK(empty.to_json()["informational"] == true);
    CHECK_THROWS_AS(duality_diagnostic(PercolationConfig(g, 0.0, 1), 3), std::domain_error);
}

TEST_CASE("large clusters have many good lines")
{
    const HammingGraph g(2, 300);
    const PercolationConfig cfg(g, 0.15, 404);
    const double eta = default_eta(0.15, g.vertex_count());
    const auto runs = run_replicas(cfg, {}, 30, 1, eta);
    int ok = 0;
    for (const ReplicaSummary& r : runs) {
        bool all = !r.good_lines.empty();
        for (const std::uint64_t lines : r.good_lines) {
            all = all && lines >= 225;
        }
        ok += all;
    }
    CHECK(ok >= 29); // 95% of 30, rounded up
}
