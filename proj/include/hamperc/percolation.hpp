#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hamperc/graph_model.hpp"
#include "hamperc/rng.hpp"

namespace hamperc {

// Bond percolation on H(d, n) at p = (1 + epsilon) / Omega.
class PercolationConfig {
public:
    // Rejects epsilon outside [-1, Omega - 1] with std::domain_error.
    PercolationConfig(HammingGraph graph, double epsilon, std::uint64_t seed);

    // Config at an explicit edge probability; epsilon is derived as p * Omega - 1.
    static PercolationConfig from_probability(HammingGraph graph, double p, std::uint64_t seed);

    const HammingGraph& graph() const noexcept { return graph_; }
    double epsilon() const noexcept { return epsilon_; }
    double p() const noexcept { return p_; }
    std::uint64_t seed() const noexcept { return seed_; }

    Rng rng(std::uint64_t stream) const noexcept { return Rng(seed_, stream); }

private:
    PercolationConfig(HammingGraph graph, double epsilon, double p, std::uint64_t seed);

    HammingGraph graph_;
    double epsilon_;
    double p_;
    std::uint64_t seed_;
};

struct Edge {
    VertexId u; // u < v
    VertexId v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Occupied edges grouped by the unique line containing them. Within a line
// the edges are sorted in canonical K_n order (lexicographic by position),
// which coincides with lexicographic (u, v) order.
class OccupiedEdgeSet {
public:
    explicit OccupiedEdgeSet(const HammingGraph& g);

    std::uint64_t line_count() const noexcept { return per_line_.size(); }
    std::span<const Edge> line_edges(std::uint64_t line_id) const { return per_line_.at(line_id); }
    std::uint64_t total_occupied() const noexcept { return total_; }
    std::uint64_t lines_per_axis() const noexcept { return lines_per_axis_; }

    // Appends must arrive in canonical order within each line.
    void append(std::uint64_t line_id, Edge e);
    // Canonicalizes and inserts an arbitrary edge of g; throws std::domain_error
    // if u and v are not adjacent. Duplicates are ignored.
    void insert(const HammingGraph& g, VertexId u, VertexId v);
    bool contains(const HammingGraph& g, VertexId u, VertexId v) const;

    template <class F>
    void for_each(F&& f) const
    {
        for (const auto& line : per_line_) {
            for (const Edge& e : line) {
                f(e);
            }
        }
    }

    // Line-delimited "axis index u v" text; debugging only.
    void write_text(std::ostream& out) const;
    static OccupiedEdgeSet read_text(const HammingGraph& g, std::istream& in);

    // Set union of two edge sets on the same graph.
    static OccupiedEdgeSet merge(const OccupiedEdgeSet& a, const OccupiedEdgeSet& b);

private:
    std::uint64_t lines_per_axis_;
    std::vector<std::vector<Edge>> per_line_;
    std::uint64_t total_ = 0;
};

// Each edge occupied independently with probability cfg.p(), by geometric
// skip-sampling over every line's canonical edge order. Deterministic in
// (cfg.seed(), stream).
OccupiedEdgeSet sample_configuration(const PercolationConfig& cfg, std::uint64_t stream = 0);
OccupiedEdgeSet sample_configuration(const PercolationConfig& cfg, Rng& rng);

// Occupies each edge absent from `existing` with probability q, independently.
// Returns only the newly occupied edges.
OccupiedEdgeSet sample_vacant_edges(const HammingGraph& g, const OccupiedEdgeSet& existing, double q, Rng& rng);

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t count);

    std::uint32_t find(std::uint32_t x) noexcept
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) noexcept;
    std::uint32_t size_of(std::uint32_t x) noexcept { return size_[find(x)]; }
    std::size_t count() const noexcept { return parent_.size(); }
    void reset() noexcept;

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

struct ClusterStats {
    std::vector<std::uint64_t> sizes; // descending
    std::uint64_t cmax = 0;
    std::uint64_t c2 = 0; // 0 when there is a single component
    // component id per vertex, ids ordered by first-encountered root; id 0 of
    // `sizes` order is not implied. Filled only when requested.
    std::vector<std::uint32_t> component;
    std::vector<std::uint64_t> component_size; // indexed by component id
    std::uint32_t largest_component = 0;        // id of a largest component

    std::uint64_t vertex_count() const noexcept;
    std::size_t cluster_count() const noexcept { return sizes.size(); }
};

ClusterStats connected_components(const HammingGraph& g, const OccupiedEdgeSet& edges, bool keep_labels = false);

// Number of vertices in components of size at least k. k >= 1.
std::uint64_t z_geq(const ClusterStats& stats, std::uint64_t k);

// Per-horizontal-line (first coordinate) member counts of one labelled
// component; d = 2 only.
std::vector<std::uint32_t> horizontal_line_counts(const HammingGraph& g, const ClusterStats& stats,
                                                  std::uint32_t component);

// (component id, good horizontal lines) for every component of size >=
// min_size, in id order. A line is good when it holds >= threshold members.
// One pass over the vertices regardless of how many clusters qualify.
std::vector<std::pair<std::uint32_t, std::uint64_t>> large_cluster_good_lines(const HammingGraph& g,
                                                                             const ClusterStats& stats,
                                                                             std::uint64_t min_size,
                                                                             std::uint64_t threshold);

struct ExplorationResult {
    VertexId origin = 0;
    std::uint64_t steps = 0;         // T: vertices explored (turned red)
    std::uint64_t cluster_size = 0;  // |C_T(v0)|: red + green at T
    bool died_out = false;           // T = T_{v0} < cap
    std::vector<std::uint32_t> horiz_counts; // N(v0, i): members with first coordinate i
    std::vector<std::uint32_t> vert_counts;  // N^(v0, i): members with second coordinate i
    std::vector<VertexId> members;           // discovery order; only when requested
};

// Reusable per-thread state for breadth-first exploration on H(2, n).
// Whites are kept per line in swap-with-last dense arrays; only lines touched
// by an exploration are restored afterwards, so consecutive runs stay cheap.
class Explorer {
public:
    explicit Explorer(const HammingGraph& g);

    // Runs the coloured exploration from v0 until no green vertex remains or
    // `cap` vertices have been explored. cap = V means "no cap".
    ExplorationResult run(double p, VertexId v0, std::uint64_t cap, Rng& rng, bool keep_members = false);

    const HammingGraph& graph() const noexcept { return graph_; }

private:
    void make_green(VertexId u);
    void restore();

    HammingGraph graph_;
    std::uint32_t n_;
    // whites_[line][0 .. white_count_[line]) are the white members of a line;
    // lines 0..n-1 are horizontal (first coordinate fixed), n..2n-1 vertical.
    std::vector<std::uint32_t> whites_;
    std::vector<std::uint32_t> white_count_;
    std::vector<std::uint32_t> pos_h_;
    std::vector<std::uint32_t> pos_v_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint8_t> line_dirty_;
    std::vector<VertexId> queue_;
    std::vector<std::uint32_t> horiz_;
    std::vector<std::uint32_t> vert_;
};

// Throws std::domain_error for cap == 0, d != 2 or an origin outside [0, V).
ExplorationResult explore_cluster(const PercolationConfig& cfg, VertexId v0, std::uint64_t cap,
                                  std::uint64_t stream = 0, bool keep_members = false);

// Number of horizontal lines i with horiz_counts[i] >= threshold.
std::uint64_t good_line_count(const ExplorationResult& res, std::uint64_t threshold);
std::uint64_t good_line_count(std::span<const std::uint32_t> line_counts, std::uint64_t threshold);

struct SprinklingReport {
    double p = 0;
    double p_minus = 0;
    double eta = 0;
    double sprinkle_prob = 0; // eta / Omega
    std::uint64_t large_threshold = 0; // ceil(eta V)
    std::vector<std::uint64_t> clusters_before; // sizes >= large_threshold at p_-
    std::uint64_t z_prime = 0;
    bool merged_after = true;
    std::uint64_t cmax_before = 0;
    std::uint64_t cmax_after = 0;
    std::uint64_t occupied_before = 0;
    std::uint64_t occupied_sprinkled = 0;
    std::uint64_t occupied_after = 0;
    // Good horizontal lines of each large p_- cluster, aligned with clusters_before.
    std::uint64_t good_line_threshold = 0; // ceil(eta V / (4n))
    std::vector<std::uint64_t> good_lines;
};

// Solves p_- + (1 - p_-) eta / Omega = p for p_-.
double sprinkling_base_probability(double p, double eta, std::uint64_t omega);

// Two-round exposure: p_- configuration, then each vacant edge occupied with
// probability eta / Omega. eta = 0 is accepted (nothing is sprinkled).
// Throws std::domain_error when p_- falls outside [0, 1] or eta < 0.
SprinklingReport two_round_exposure(const PercolationConfig& cfg, double eta, std::uint64_t stream = 0);

// eta = sqrt(epsilon) * V^(-1/6).
double default_eta(double epsilon, std::uint64_t volume);

} // namespace hamperc
