#include "hamperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hamperc {

PercolationConfig::PercolationConfig(HammingGraph graph, double epsilon, std::uint64_t seed)
    : graph_(std::move(graph)), epsilon_(epsilon), p_(0), seed_(seed)
{
    const auto omega = static_cast<double>(graph_.degree());
    if (!(epsilon >= -1.0 && epsilon <= omega - 1.0)) {
        throw std::domain_error("PercolationConfig: epsilon = " + std::to_string(epsilon) +
                                " outside [-1, Omega - 1] = [-1, " + std::to_string(omega - 1.0) + "]");
    }
    p_ = std::clamp((1.0 + epsilon) / omega, 0.0, 1.0);
}

PercolationConfig::PercolationConfig(HammingGraph graph, double epsilon, double p, std::uint64_t seed)
    : graph_(std::move(graph)), epsilon_(epsilon), p_(p), seed_(seed)
{
}

PercolationConfig PercolationConfig::from_probability(HammingGraph graph, double p, std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("PercolationConfig: p = " + std::to_string(p) + " outside [0, 1]");
    }
    const double epsilon = p * static_cast<double>(graph.degree()) - 1.0;
    return PercolationConfig(std::move(graph), epsilon, p, seed);
}

//---------------------------------------------------------------------------//

OccupiedEdgeSet::OccupiedEdgeSet(const HammingGraph& g)
    : lines_per_axis_(g.lines_per_axis()), per_line_(g.line_count())
{
}

void OccupiedEdgeSet::append(std::uint64_t line_id, Edge e)
{
    per_line_[line_id].push_back(e);
    ++total_;
}

namespace {

// Axis along which u and v differ, or d if they are not adjacent.
std::uint32_t differing_axis(const HammingGraph& g, VertexId u, VertexId v)
{
    std::uint32_t axis = g.dimension();
    for (std::uint32_t j = 0; j < g.dimension(); ++j) {
        if (g.coordinate(u, j) != g.coordinate(v, j)) {
            if (axis != g.dimension()) {
                return g.dimension();
            }
            axis = j;
        }
    }
    return axis;
}

} // namespace

void OccupiedEdgeSet::insert(const HammingGraph& g, VertexId u, VertexId v)
{
    if (u >= g.vertex_count() || v >= g.vertex_count()) {
        throw std::domain_error("OccupiedEdgeSet::insert: vertex outside [0, V)");
    }
    const std::uint32_t axis = differing_axis(g, u, v);
    if (axis == g.dimension()) {
        throw std::domain_error("OccupiedEdgeSet::insert: vertices " + std::to_string(u) + " and " +
                                std::to_string(v) + " are not adjacent");
    }
    const Edge e{std::min(u, v), std::max(u, v)};
    auto& line = per_line_[g.line_id(u, axis)];
    const auto it = std::lower_bound(line.begin(), line.end(), e);
    if (it != line.end() && *it == e) {
        return;
    }
    line.insert(it, e);
    ++total_;
}

bool OccupiedEdgeSet::contains(const HammingGraph& g, VertexId u, VertexId v) const
{
    const std::uint32_t axis = differing_axis(g, u, v);
    if (axis == g.dimension()) {
        return false;
    }
    const Edge e{std::min(u, v), std::max(u, v)};
    const auto& line = per_line_[g.line_id(u, axis)];
    return std::binary_search(line.begin(), line.end(), e);
}

void OccupiedEdgeSet::write_text(std::ostream& out) const
{
    for (std::uint64_t id = 0; id < per_line_.size(); ++id) {
        for (const Edge& e : per_line_[id]) {
            out << id / lines_per_axis_ << ' ' << id % lines_per_axis_ << ' ' << e.u << ' ' << e.v << '\n';
        }
    }
}

OccupiedEdgeSet OccupiedEdgeSet::read_text(const HammingGraph& g, std::istream& in)
{
    OccupiedEdgeSet set(g);
    std::string row;
    std::size_t lineno = 0;
    while (std::getline(in, row)) {
        ++lineno;
        if (row.empty() || row[0] == '#') {
            continue;
        }
        std::istringstream fields(row);
        std::uint64_t axis, index, u, v;
        if (!(fields >> axis >> index >> u >> v)) {
            throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": expected 'axis index u v'");
        }
        set.insert(g, u, v);
        if (differing_axis(g, u, v) != axis || g.line_index(u, static_cast<std::uint32_t>(axis)) != index) {
            throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": line does not match edge");
        }
    }
    return set;
}

OccupiedEdgeSet OccupiedEdgeSet::merge(const OccupiedEdgeSet& a, const OccupiedEdgeSet& b)
{
    if (a.per_line_.size() != b.per_line_.size()) {
        throw std::invalid_argument("OccupiedEdgeSet::merge: edge sets belong to different graphs");
    }
    OccupiedEdgeSet out = a;
    out.total_ = 0;
    for (std::size_t id = 0; id < a.per_line_.size(); ++id) {
        auto& dst = out.per_line_[id];
        dst.clear();
        std::set_union(a.per_line_[id].begin(), a.per_line_[id].end(), b.per_line_[id].begin(),
                       b.per_line_[id].end(), std::back_inserter(dst));
        out.total_ += dst.size();
    }
    return out;
}

//---------------------------------------------------------------------------//

namespace {

// Walks the canonical K_n edge order of one line, converting positions to
// (a, b) pairs incrementally. Positions must be fed in increasing order.
class LineCursor {
public:
    explicit LineCursor(std::uint32_t n) : n_(n) {}

    std::pair<std::uint32_t, std::uint32_t> pair_at(std::uint64_t pos) noexcept
    {
        while (pos >= row_start_ + (n_ - 1 - a_)) {
            row_start_ += n_ - 1 - a_;
            ++a_;
        }
        return {a_, static_cast<std::uint32_t>(a_ + 1 + (pos - row_start_))};
    }

private:
    std::uint32_t n_;
    std::uint32_t a_ = 0;
    std::uint64_t row_start_ = 0;
};

// Gap to the next success in a Bernoulli(p) sequence, i.e. the number of
// failures, saturated at `limit`.
class GeometricSkip {
public:
    explicit GeometricSkip(double p) : p_(p), log_q_(std::log1p(-p)) {}

    std::uint64_t next(Rng& rng, std::uint64_t limit) const noexcept
    {
        if (p_ >= 1.0) {
            return 0;
        }
        const double g = std::floor(std::log(rng.uniform_pos()) / log_q_);
        if (!(g < static_cast<double>(limit))) {
            return limit;
        }
        return static_cast<std::uint64_t>(g);
    }

private:
    double p_;
    double log_q_;
};

template <class OnHit>
void skip_sample_line(std::uint64_t edges_per_line, const GeometricSkip& skip, Rng& rng, OnHit&& on_hit)
{
    std::uint64_t pos = 0;
    while (true) {
        const std::uint64_t gap = skip.next(rng, edges_per_line);
        if (gap >= edges_per_line - pos) {
            return;
        }
        pos += gap;
        on_hit(pos);
        ++pos;
        if (pos >= edges_per_line) {
            return;
        }
    }
}

} // namespace

OccupiedEdgeSet sample_configuration(const PercolationConfig& cfg, Rng& rng)
{
    const HammingGraph& g = cfg.graph();
    OccupiedEdgeSet set(g);
    if (cfg.p() <= 0.0) {
        return set;
    }
    const GeometricSkip skip(cfg.p());
    const std::uint64_t m = g.edges_per_line();
    for (std::uint32_t axis = 0; axis < g.dimension(); ++axis) {
        for (std::uint64_t idx = 0; idx < g.lines_per_axis(); ++idx) {
            const std::uint64_t id = axis * g.lines_per_axis() + idx;
            LineCursor cursor(g.side());
            skip_sample_line(m, skip, rng, [&](std::uint64_t pos) {
                const auto [a, b] = cursor.pair_at(pos);
                set.append(id, Edge{g.line_member(axis, idx, a), g.line_member(axis, idx, b)});
            });
        }
    }
    return set;
}

OccupiedEdgeSet sample_configuration(const PercolationConfig& cfg, std::uint64_t stream)
{
    Rng rng = cfg.rng(stream);
    return sample_configuration(cfg, rng);
}

OccupiedEdgeSet sample_vacant_edges(const HammingGraph& g, const OccupiedEdgeSet& existing, double q, Rng& rng)
{
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("sample_vacant_edges: probability outside [0, 1]");
    }
    OccupiedEdgeSet added(g);
    if (q <= 0.0) {
        return added;
    }
    const GeometricSkip skip(q);
    const std::uint64_t m = g.edges_per_line();
    for (std::uint32_t axis = 0; axis < g.dimension(); ++axis) {
        for (std::uint64_t idx = 0; idx < g.lines_per_axis(); ++idx) {
            const std::uint64_t id = axis * g.lines_per_axis() + idx;
            const auto present = existing.line_edges(id);
            std::size_t cursor_present = 0;
            LineCursor cursor(g.side());
            skip_sample_line(m, skip, rng, [&](std::uint64_t pos) {
                const auto [a, b] = cursor.pair_at(pos);
                const Edge e{g.line_member(axis, idx, a), g.line_member(axis, idx, b)};
                while (cursor_present < present.size() && present[cursor_present] < e) {
                    ++cursor_present;
                }
                if (cursor_present < present.size() && present[cursor_present] == e) {
                    return;
                }
                added.append(id, e);
            });
        }
    }
    return added;
}

//---------------------------------------------------------------------------//

UnionFind::UnionFind(std::size_t count) : parent_(count), size_(count, 1)
{
    if (count > std::numeric_limits<std::uint32_t>::max()) {
        throw std::domain_error("UnionFind: more than 2^32 - 1 elements");
    }
    std::iota(parent_.begin(), parent_.end(), 0u);
}

bool UnionFind::unite(std::uint32_t a, std::uint32_t b) noexcept
{
    a = find(a);
    b = find(b);
    if (a == b) {
        return false;
    }
    if (size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

void UnionFind::reset() noexcept
{
    std::iota(parent_.begin(), parent_.end(), 0u);
    std::fill(size_.begin(), size_.end(), 1u);
}

std::uint64_t ClusterStats::vertex_count() const noexcept
{
    return std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
}

ClusterStats connected_components(const HammingGraph& g, const OccupiedEdgeSet& edges, bool keep_labels)
{
    if (edges.line_count() != g.line_count()) {
        throw std::invalid_argument("connected_components: edge set does not belong to this graph");
    }
    const std::uint64_t volume = g.vertex_count();
    UnionFind uf(volume);
    edges.for_each([&](const Edge& e) { uf.unite(static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(e.v)); });

    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> root_label(volume, kUnset);
    ClusterStats stats;
    if (keep_labels) {
        stats.component.resize(volume);
    }
    for (std::uint64_t v = 0; v < volume; ++v) {
        const std::uint32_t r = uf.find(static_cast<std::uint32_t>(v));
        if (root_label[r] == kUnset) {
            root_label[r] = static_cast<std::uint32_t>(stats.component_size.size());
            stats.component_size.push_back(uf.size_of(r));
        }
        if (keep_labels) {
            stats.component[v] = root_label[r];
        }
    }
    // First-encountered root wins ties for the largest component.
    std::uint64_t best = 0;
    for (std::uint32_t id = 0; id < stats.component_size.size(); ++id) {
        if (stats.component_size[id] > best) {
            best = stats.component_size[id];
            stats.largest_component = id;
        }
    }
    stats.sizes = stats.component_size;
    std::sort(stats.sizes.begin(), stats.sizes.end(), std::greater<>());
    stats.cmax = stats.sizes.empty() ? 0 : stats.sizes[0];
    stats.c2 = stats.sizes.size() > 1 ? stats.sizes[1] : 0;
    return stats;
}

std::uint64_t z_geq(const ClusterStats& stats, std::uint64_t k)
{
    if (k == 0) {
        throw std::domain_error("z_geq: k must be at least 1");
    }
    std::uint64_t total = 0;
    for (const std::uint64_t s : stats.sizes) {
        if (s < k) {
            break;
        }
        total += s;
    }
    return total;
}

std::vector<std::uint32_t> horizontal_line_counts(const HammingGraph& g, const ClusterStats& stats,
                                                  std::uint32_t component)
{
    if (g.dimension() != 2) {
        throw std::domain_error("horizontal_line_counts: requires d = 2");
    }
    if (stats.component.size() != g.vertex_count()) {
        throw std::invalid_argument("horizontal_line_counts: component labels were not retained");
    }
    std::vector<std::uint32_t> counts(g.side(), 0);
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        if (stats.component[v] == component) {
            ++counts[g.coordinate(v, 0)];
        }
    }
    return counts;
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> large_cluster_good_lines(const HammingGraph& g,
                                                                             const ClusterStats& stats,
                                                                             std::uint64_t min_size,
                                                                             std::uint64_t threshold)
{
    if (g.dimension() != 2) {
        throw std::domain_error("large_cluster_good_lines: requires d = 2");
    }
    if (stats.component.size() != g.vertex_count()) {
        throw std::invalid_argument("large_cluster_good_lines: component labels were not retained");
    }
    // bucket vertices by component (counting sort), then one pass per cluster
    const std::size_t comps = stats.component_size.size();
    std::vector<std::uint64_t> start(comps + 1, 0);
    for (const std::uint32_t c : stats.component) {
        ++start[c + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::uint32_t> first_coord(g.vertex_count());
    std::vector<std::uint64_t> fill(start.begin(), start.end() - 1);
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        first_coord[fill[stats.component[v]]++] = g.coordinate(v, 0);
    }
    std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
    std::vector<std::uint32_t> counts(g.side(), 0);
    for (std::uint32_t id = 0; id < comps; ++id) {
        if (stats.component_size[id] < min_size) {
            continue;
        }
        std::uint64_t good = threshold == 0 ? g.side() : 0;
        for (std::uint64_t i = start[id]; i < start[id + 1]; ++i) {
            if (threshold > 0 && ++counts[first_coord[i]] == threshold) {
                ++good;
            }
        }
        for (std::uint64_t i = start[id]; i < start[id + 1]; ++i) {
            counts[first_coord[i]] = 0;
        }
        out.emplace_back(id, good);
    }
    return out;
}

std::uint64_t good_line_count(std::span<const std::uint32_t> line_counts, std::uint64_t threshold)
{
    return static_cast<std::uint64_t>(
        std::count_if(line_counts.begin(), line_counts.end(), [&](std::uint32_t c) { return c >= threshold; }));
}

std::uint64_t good_line_count(const ExplorationResult& res, std::uint64_t threshold)
{
    return good_line_count(res.horiz_counts, threshold);
}

} // namespace hamperc
