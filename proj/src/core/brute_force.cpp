#include "hamperc/brute_force.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "hamperc/numeric.hpp"
#include "hamperc/parallel.hpp"

namespace hamperc {

std::string Functional::name() const
{
    switch (kind) {
    case FunctionalKind::Cmax:
        return "cmax";
    case FunctionalKind::ClusterTail:
        return "cluster_tail(v=" + std::to_string(vertex) + ",k=" + std::to_string(k) + ")";
    case FunctionalKind::ZGeq:
        return "z_geq(k=" + std::to_string(k) + ")";
    case FunctionalKind::Chi:
        return "chi(v=" + std::to_string(vertex) + ")";
    }
    return "unknown";
}

namespace {

struct SmallGraph {
    std::uint32_t volume;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;
};

SmallGraph enumerate_edges(const HammingGraph& g)
{
    if (g.edge_count() > kOracleMaxEdges) {
        throw std::length_error("brute-force oracle refuses H(" + std::to_string(g.dimension()) + "," +
                                std::to_string(g.side()) + "): " + std::to_string(g.edge_count()) +
                                " edges exceeds the limit of " + std::to_string(kOracleMaxEdges));
    }
    SmallGraph sg{static_cast<std::uint32_t>(g.vertex_count()), {}};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const VertexId w : g.neighbor_indices(v)) {
            if (v < w) {
                sg.edges.emplace_back(static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(w));
            }
        }
    }
    return sg;
}

// Tiny union-find on at most 25 vertices, reset per configuration.
struct TinyForest {
    std::uint8_t parent[32];
    std::uint8_t size[32];

    void reset(std::uint32_t volume)
    {
        for (std::uint32_t i = 0; i < volume; ++i) {
            parent[i] = static_cast<std::uint8_t>(i);
            size[i] = 1;
        }
    }
    std::uint8_t find(std::uint8_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint8_t a, std::uint8_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (size[a] < size[b]) {
            std::swap(a, b);
        }
        parent[b] = a;
        size[a] = static_cast<std::uint8_t>(size[a] + size[b]);
    }
};

// Visits every configuration with its weight; `visit(weight, forest, accum)`
// adds into the per-chunk accumulator, and chunks are merged in order.
template <class Accum, class Visit, class Merge>
Accum enumerate(const HammingGraph& g, double p, unsigned threads, Accum init, Visit visit, Merge merge,
                std::uint64_t& configs)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("exact_expectation: p outside [0, 1]");
    }
    const SmallGraph sg = enumerate_edges(g);
    const auto m = static_cast<std::uint32_t>(sg.edges.size());
    std::vector<double> weight(m + 1);
    for (std::uint32_t occ = 0; occ <= m; ++occ) {
        weight[occ] = std::pow(p, occ) * std::pow(1.0 - p, m - occ);
    }
    configs = std::uint64_t{1} << m;
    const std::uint32_t chunk_bits = std::min<std::uint32_t>(m, 6);
    const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
    const std::uint64_t per_chunk = configs >> chunk_bits;
    std::vector<Accum> partial(chunks, init);
    parallel_for(chunks, threads, [&](std::uint64_t c) {
        TinyForest forest;
        Accum& acc = partial[c];
        for (std::uint64_t mask = c * per_chunk; mask < (c + 1) * per_chunk; ++mask) {
            forest.reset(sg.volume);
            for (std::uint32_t e = 0; e < m; ++e) {
                if ((mask >> e) & 1u) {
                    forest.unite(sg.edges[e].first, sg.edges[e].second);
                }
            }
            visit(weight[std::popcount(mask)], forest, sg.volume, acc);
        }
    });
    Accum total = init;
    for (const Accum& a : partial) {
        merge(total, a);
    }
    return total;
}

struct Pair {
    CompensatedSum value;
    CompensatedSum weight;
};

} // namespace

ExactResult exact_expectation(const HammingGraph& g, double p, const Functional& f, unsigned threads)
{
    if ((f.kind == FunctionalKind::ClusterTail || f.kind == FunctionalKind::Chi) && f.vertex >= g.vertex_count()) {
        throw std::domain_error("exact_expectation: vertex outside [0, V)");
    }
    if ((f.kind == FunctionalKind::ClusterTail || f.kind == FunctionalKind::ZGeq) && f.k == 0) {
        throw std::domain_error("exact_expectation: k must be at least 1");
    }
    const auto evaluate = [&f](TinyForest& forest, std::uint32_t volume) -> double {
        switch (f.kind) {
        case FunctionalKind::Cmax: {
            std::uint32_t best = 0;
            for (std::uint32_t v = 0; v < volume; ++v) {
                if (forest.parent[v] == v) {
                    best = std::max<std::uint32_t>(best, forest.size[v]);
                }
            }
            return best;
        }
        case FunctionalKind::ClusterTail:
            return forest.size[forest.find(static_cast<std::uint8_t>(f.vertex))] >= f.k ? 1.0 : 0.0;
        case FunctionalKind::ZGeq: {
            std::uint32_t total = 0;
            for (std::uint32_t v = 0; v < volume; ++v) {
                if (forest.parent[v] == v && forest.size[v] >= f.k) {
                    total += forest.size[v];
                }
            }
            return total;
        }
        case FunctionalKind::Chi:
            return forest.size[forest.find(static_cast<std::uint8_t>(f.vertex))];
        }
        return 0.0;
    };
    std::uint64_t configs = 0;
    const Pair total = enumerate(
        g, p, threads, Pair{},
        [&](double w, TinyForest& forest, std::uint32_t volume, Pair& acc) {
            acc.value += w * evaluate(forest, volume);
            acc.weight += w;
        },
        [](Pair& into, const Pair& from) {
            into.value += from.value.value();
            into.weight += from.weight.value();
        },
        configs);
    return ExactResult{f.name(), total.value.value(), configs, total.weight.value()};
}

std::vector<double> exact_cluster_size_distribution(const HammingGraph& g, double p, VertexId v, unsigned threads)
{
    if (v >= g.vertex_count()) {
        throw std::domain_error("exact_cluster_size_distribution: vertex outside [0, V)");
    }
    using Dist = std::vector<CompensatedSum>;
    const auto volume = g.vertex_count();
    std::uint64_t configs = 0;
    const Dist total = enumerate(
        g, p, threads, Dist(volume + 1),
        [&](double w, TinyForest& forest, std::uint32_t, Dist& acc) {
            acc[forest.size[forest.find(static_cast<std::uint8_t>(v))]] += w;
        },
        [](Dist& into, const Dist& from) {
            for (std::size_t s = 0; s < into.size(); ++s) {
                into[s] += from[s].value();
            }
        },
        configs);
    std::vector<double> out(volume + 1);
    for (std::size_t s = 0; s < out.size(); ++s) {
        out[s] = total[s].value();
    }
    return out;
}

} // namespace hamperc
