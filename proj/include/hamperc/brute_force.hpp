#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamperc/graph_model.hpp"

namespace hamperc {

// Largest edge count the exhaustive oracle accepts (2^24 configurations).
inline constexpr std::uint64_t kOracleMaxEdges = 24;

enum class FunctionalKind { Cmax, ClusterTail, ZGeq, Chi };

struct Functional {
    FunctionalKind kind = FunctionalKind::Cmax;
    VertexId vertex = 0;
    std::uint64_t k = 1;

    static Functional cmax() { return {FunctionalKind::Cmax, 0, 1}; }
    static Functional cluster_tail(VertexId v, std::uint64_t k) { return {FunctionalKind::ClusterTail, v, k}; }
    static Functional z_geq(std::uint64_t k) { return {FunctionalKind::ZGeq, 0, k}; }
    static Functional chi(VertexId v = 0) { return {FunctionalKind::Chi, v, 1}; }

    std::string name() const;
};

struct ExactResult {
    std::string functional_name;
    double value = 0.0;
    std::uint64_t config_count = 0;
    double weight_total = 0.0; // sum of configuration weights; 1 up to rounding
};

// Sum over all 2^edge_count configurations of weight * functional. Throws
// std::length_error when edge_count > kOracleMaxEdges. The configuration
// space is cut into fixed chunks reduced in order, so the result does not
// depend on `threads`.
ExactResult exact_expectation(const HammingGraph& g, double p, const Functional& f, unsigned threads = 1);

// Exact law of |C(v)|: entry s is P(|C(v)| = s), s in [0, V].
std::vector<double> exact_cluster_size_distribution(const HammingGraph& g, double p, VertexId v,
                                                    unsigned threads = 1);

} // namespace hamperc
