#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hamperc/graph_model.hpp"

using namespace hamperc;

TEST_CASE("basic counts")
{
    const HammingGraph g(2, 10);
    CHECK(g.vertex_count() == 100);
    CHECK(g.degree() == 18);
    CHECK(g.edge_count() == 900);
    CHECK(HammingGraph(3, 4).edge_count() == 64 * 9 / 2);
    CHECK(HammingGraph(1, 5).edge_count() == 10);
}

TEST_CASE("construction rejects bad sizes and overflow")
{
    CHECK_THROWS_AS(HammingGraph(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(HammingGraph(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(HammingGraph(64, 2), std::overflow_error);
    CHECK_THROWS_AS(HammingGraph(5, 100000), std::overflow_error);
    // n = 2: edge count d 2^(d-1) fits 64 bits up to d = 59
    CHECK(HammingGraph(59, 2).edge_count() == 59 * (std::uint64_t{1} << 58));
    CHECK_THROWS_AS(HammingGraph(60, 2), std::overflow_error);
}

TEST_CASE("vertex_index examples")
{
    const HammingGraph g(2, 10);
    CHECK(g.vertex_index(std::vector<std::uint32_t>{0, 0}) == 0);
    CHECK(g.vertex_index(std::vector<std::uint32_t>{3, 7}) == 73);
    CHECK(HammingGraph(3, 4).vertex_index(std::vector<std::uint32_t>{1, 2, 3}) == 57);
    CHECK_THROWS_AS(g.vertex_index(std::vector<std::uint32_t>{10, 0}), std::domain_error);
    CHECK_THROWS_AS(g.vertex_index(std::vector<std::uint32_t>{1, 2, 3}), std::domain_error);
}

TEST_CASE("index round trip is exhaustive on small graphs")
{
    for (const auto [d, n] : {std::pair{1u, 5u}, {2u, 3u}, {2u, 5u}, {3u, 4u}, {4u, 3u}}) {
        const HammingGraph g(d, n);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const Vertex c = g.vertex_from_index(v);
            REQUIRE(g.vertex_index(c) == v);
            for (std::uint32_t a = 0; a < d; ++a) {
                CHECK(g.coordinate(v, a) == c[a]);
            }
        }
    }
}

TEST_CASE("neighbors")
{
    CHECK(HammingGraph(2, 10).neighbors(std::vector<std::uint32_t>{4, 4}).size() == 18);

    const auto k5 = HammingGraph(1, 5).neighbors(std::vector<std::uint32_t>{2});
    CHECK(k5 == std::vector<Vertex>{{0}, {1}, {3}, {4}});

    const auto h23 = HammingGraph(2, 3).neighbors(std::vector<std::uint32_t>{0, 0});
    const std::set<Vertex> got(h23.begin(), h23.end());
    CHECK(got == std::set<Vertex>{{1, 0}, {2, 0}, {0, 1}, {0, 2}});
}

TEST_CASE("neighbors are distinct, differ in one coordinate, and symmetric")
{
    for (const auto [d, n] : {std::pair{2u, 3u}, {2u, 5u}, {3u, 4u}, {3u, 5u}}) {
        const HammingGraph g(d, n);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const auto nb = g.neighbor_indices(v);
            REQUIRE(nb.size() == g.degree());
            CHECK(std::set<VertexId>(nb.begin(), nb.end()).size() == nb.size());
            for (const VertexId w : nb) {
                CHECK(w != v);
                int diff = 0;
                for (std::uint32_t a = 0; a < d; ++a) {
                    diff += g.coordinate(v, a) != g.coordinate(w, a);
                }
                CHECK(diff == 1);
                const auto back = g.neighbor_indices(w);
                CHECK(std::find(back.begin(), back.end(), v) != back.end());
            }
        }
    }
}

TEST_CASE("lines of H(2,3)")
{
    const HammingGraph g(2, 3);
    const auto ls = g.lines();
    CHECK(ls.size() == 6);
    std::uint64_t intra = 0;
    for (const Line& l : ls) {
        CHECK(l.members.size() == 3);
        intra += l.members.size() * (l.members.size() - 1) / 2;
    }
    CHECK(intra == 18);
    CHECK(intra == g.edge_count());
}

TEST_CASE("horizontal and vertical line membership for d = 2")
{
    const HammingGraph g(2, 10);
    const VertexId v = 73; // (3, 7)
    // horizontal line i = {(i, x)} varies the second coordinate
    CHECK(g.line_index(v, 1) == 3);
    CHECK(g.line_index(v, 0) == 7);
    const Line h = g.line(1, 3);
    for (std::uint32_t x = 0; x < 10; ++x) {
        CHECK(g.coordinate(h.members[x], 0) == 3);
        CHECK(g.coordinate(h.members[x], 1) == x);
    }
}

TEST_CASE("every vertex lies on d lines, every edge in exactly one line")
{
    for (const auto [d, n] : {std::pair{2u, 4u}, {3u, 3u}, {1u, 6u}}) {
        const HammingGraph g(d, n);
        std::vector<int> seen(g.vertex_count(), 0);
        std::set<std::pair<VertexId, VertexId>> edges;
        std::uint64_t pairs = 0;
        for (const Line& l : g.lines()) {
            for (std::size_t i = 0; i < l.members.size(); ++i) {
                ++seen[l.members[i]];
                CHECK(g.line_index(l.members[i], l.axis) == l.index);
                for (std::size_t j = i + 1; j < l.members.size(); ++j) {
                    edges.emplace(l.members[i], l.members[j]);
                    ++pairs;
                    int diff = 0;
                    for (std::uint32_t a = 0; a < d; ++a) {
                        diff += g.coordinate(l.members[i], a) != g.coordinate(l.members[j], a);
                    }
                    CHECK(diff == 1);
                }
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [&](int c) { return c == static_cast<int>(d); }));
        CHECK(pairs == g.edge_count());
        CHECK(edges.size() == g.edge_count());
    }
}
