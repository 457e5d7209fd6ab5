#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hamperc/brute_force.hpp"
#include "hamperc/percolation.hpp"

using namespace hamperc;

TEST_CASE("p = 0 and p = 1")
{
    const HammingGraph g(2, 9);
    const ExplorationResult r = explore_cluster(PercolationConfig(g, -1.0, 1), 40, g.vertex_count());
    CHECK(r.steps == 1);
    CHECK(r.cluster_size == 1);
    CHECK(r.died_out);
    CHECK(r.origin == 40);

    const PercolationConfig full = PercolationConfig::from_probability(g, 1.0, 1);
    const ExplorationResult f = explore_cluster(full, 3, g.vertex_count(), 0, true);
    CHECK(f.cluster_size == 81);
    CHECK(f.steps == 81);
    CHECK(std::set<VertexId>(f.members.begin(), f.members.end()).size() == 81);
    CHECK(f.horiz_counts == std::vector<std::uint32_t>(9, 9));
}

TEST_CASE("errors")
{
    const PercolationConfig cfg(HammingGraph(2, 5), 0.1, 1);
    CHECK_THROWS_AS(explore_cluster(cfg, 0, 0), std::domain_error);
    CHECK_THROWS_AS(explore_cluster(cfg, 25, 25), std::domain_error);
    CHECK_THROWS_AS(explore_cluster(PercolationConfig(HammingGraph(3, 5), 0.1, 1), 0, 10), std::domain_error);
    CHECK_THROWS_AS(Explorer(HammingGraph(1, 5)), std::domain_error);
}

TEST_CASE("result invariants")
{
    const HammingGraph g(2, 60);
    const PercolationConfig cfg(g, 0.3, 4);
    Explorer ex(g);
    Rng rng = cfg.rng(0);
    for (std::uint64_t cap : {std::uint64_t{1}, std::uint64_t{7}, std::uint64_t{200}, g.vertex_count()}) {
        for (int i = 0; i < 300; ++i) {
            const ExplorationResult r = ex.run(cfg.p(), rng.below(g.vertex_count()), cap, rng, true);
            CHECK(r.steps <= cap);
            CHECK(r.steps >= 1);
            CHECK(r.cluster_size >= r.steps);
            CHECK(std::accumulate(r.horiz_counts.begin(), r.horiz_counts.end(), std::uint64_t{0}) == r.cluster_size);
            CHECK(std::accumulate(r.vert_counts.begin(), r.vert_counts.end(), std::uint64_t{0}) == r.cluster_size);
            CHECK(r.members.size() == r.cluster_size);
            CHECK(r.members.front() == r.origin);
            CHECK(std::set<VertexId>(r.members.begin(), r.members.end()).size() == r.cluster_size);
            if (r.died_out) {
                CHECK(r.steps == r.cluster_size);
                CHECK(r.steps < cap);
            } else {
                CHECK(r.steps == cap);
            }
            std::vector<std::uint32_t> h(60, 0);
            for (const VertexId v : r.members) {
                ++h[g.coordinate(v, 0)];
            }
            CHECK(h == r.horiz_counts);
        }
    }
}

TEST_CASE("a died-out exploration is exactly a cluster of its members")
{
    // Each member must have a neighbour earlier in discovery order: the
    // exploration only grows along lines of explored vertices.
    const HammingGraph g(2, 30);
    const PercolationConfig cfg(g, 0.0, 2);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const ExplorationResult r = explore_cluster(cfg, s % g.vertex_count(), g.vertex_count(), s, true);
        REQUIRE(r.died_out);
        for (std::size_t i = 1; i < r.members.size(); ++i) {
            const auto nb = g.neighbor_indices(r.members[i]);
            const bool linked = std::any_of(r.members.begin(), r.members.begin() + static_cast<long>(i),
                                            [&](VertexId u) { return std::find(nb.begin(), nb.end(), u) != nb.end(); });
            CHECK(linked);
        }
    }
}

TEST_CASE("exploration is deterministic in (seed, stream)")
{
    const PercolationConfig cfg(HammingGraph(2, 80), 0.2, 12);
    const auto a = explore_cluster(cfg, 17, 6400, 3, true);
    const auto b = explore_cluster(cfg, 17, 6400, 3, true);
    CHECK(a.members == b.members);
    CHECK(a.horiz_counts == b.horiz_counts);
}

TEST_CASE("reusing an Explorer gives the same result as a fresh one")
{
    const HammingGraph g(2, 25);
    const PercolationConfig cfg(g, 0.4, 9);
    Explorer reused(g);
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng r1 = cfg.rng(s);
        Rng r2 = cfg.rng(s);
        Explorer fresh(g);
        const auto a = reused.run(cfg.p(), s, 625, r1, true);
        const auto b = fresh.run(cfg.p(), s, 625, r2, true);
        CHECK(a.members == b.members);
    }
}

TEST_CASE("cluster size law matches exhaustive enumeration on H(2,2) and H(2,3)")
{
    const int runs = 100000;
    for (std::uint32_t n : {2u, 3u}) {
        const HammingGraph g(2, n);
        Explorer ex(g);
        for (double p : {0.1, 0.3, 0.7}) {
            const std::vector<double> exact = exact_cluster_size_distribution(g, p, 0);
            std::vector<int> counts(g.vertex_count() + 1, 0);
            Rng rng(31 + n, static_cast<std::uint64_t>(p * 1000));
            for (int i = 0; i < runs; ++i) {
                ++counts[ex.run(p, 0, g.vertex_count(), rng).cluster_size];
            }
            for (std::size_t s = 1; s < exact.size(); ++s) {
                const double se = std::sqrt(exact[s] * (1 - exact[s]) / runs);
                INFO("n=" << n << " p=" << p << " s=" << s);
                CHECK(std::fabs(counts[s] / static_cast<double>(runs) - exact[s]) <= 4 * se + 1e-12);
            }
        }
    }
}

TEST_CASE("P(|C| >= 3) on H(2,3) at p = 1/4")
{
    // exact value 0.505615234375 (rational enumeration, tests/oracles)
    const double exact = 0.505615234375;
    const int runs = 200000;
    const PercolationConfig cfg = PercolationConfig::from_probability(HammingGraph(2, 3), 0.25, 2718);
    Explorer ex(cfg.graph());
    Rng rng = cfg.rng(0);
    int hits = 0;
    for (int i = 0; i < runs; ++i) {
        hits += ex.run(cfg.p(), 4, 9, rng).cluster_size >= 3;
    }
    const double se = std::sqrt(exact * (1 - exact) / runs);
    CHECK(std::fabs(hits / static_cast<double>(runs) - exact) <= 3 * se);
}

TEST_CASE("exploration and union-find agree on E|C(v)| at n = 12")
{
    const HammingGraph g(2, 12);
    const PercolationConfig cfg(g, 0.4, 55);
    const int runs = 20000;
    double s1 = 0, q1 = 0, s2 = 0, q2 = 0;
    Explorer ex(g);
    Rng rng = cfg.rng(1u << 20);
    for (int i = 0; i < runs; ++i) {
        const auto c = static_cast<double>(ex.run(cfg.p(), 0, g.vertex_count(), rng).cluster_size);
        s1 += c;
        q1 += c * c;
        const ClusterStats st = connected_components(g, sample_configuration(cfg, i), true);
        const auto u = static_cast<double>(st.component_size[st.component[0]]);
        s2 += u;
        q2 += u * u;
    }
    const double m1 = s1 / runs, m2 = s2 / runs;
    const double v1 = (q1 / runs - m1 * m1) / runs, v2 = (q2 / runs - m2 * m2) / runs;
    CHECK(std::fabs(m1 - m2) <= 4 * std::sqrt(v1 + v2));
}

TEST_CASE("good_line_count")
{
    ExplorationResult r;
    r.horiz_counts = {0, 3, 0};
    r.cluster_size = 3;
    CHECK(good_line_count(r, 1) == 1);
    CHECK(good_line_count(r, 0) == 3);
    CHECK(good_line_count(r, 4) == 0);

    const PercolationConfig cfg(HammingGraph(2, 40), 0.5, 1);
    const ExplorationResult e = explore_cluster(cfg, 0, 1600, 7);
    CHECK(good_line_count(e, 0) == 40);
    CHECK(good_line_count(e, e.cluster_size + 1) == 0);
}
