#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hamperc/percolation.hpp"

namespace hamperc {

double default_eta(double epsilon, std::uint64_t volume)
{
    if (!(epsilon > 0.0)) {
        throw std::domain_error("default_eta: requires epsilon > 0");
    }
    return std::sqrt(epsilon) * std::pow(static_cast<double>(volume), -1.0 / 6.0);
}

double sprinkling_base_probability(double p, double eta, std::uint64_t omega)
{
    const double q = eta / static_cast<double>(omega);
    if (!(eta >= 0.0) || q >= 1.0) {
        throw std::domain_error("two_round_exposure: eta = " + std::to_string(eta) + " outside [0, Omega)");
    }
    const double p_minus = (p - q) / (1.0 - q);
    if (!(p_minus >= 0.0 && p_minus <= 1.0)) {
        throw std::domain_error("two_round_exposure: p_- = " + std::to_string(p_minus) + " outside [0, 1] for eta = " +
                                std::to_string(eta));
    }
    return p_minus;
}

SprinklingReport two_round_exposure(const PercolationConfig& cfg, double eta, std::uint64_t stream)
{
    const HammingGraph& g = cfg.graph();
    SprinklingReport rep;
    rep.p = cfg.p();
    rep.eta = eta;
    rep.p_minus = sprinkling_base_probability(cfg.p(), eta, g.degree());
    rep.sprinkle_prob = eta / static_cast<double>(g.degree());
    const double volume = static_cast<double>(g.vertex_count());
    rep.large_threshold = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(eta * volume)));
    rep.good_line_threshold = static_cast<std::uint64_t>(std::ceil(eta * volume / (4.0 * g.side())));

    Rng rng = cfg.rng(stream);
    const auto first_cfg = PercolationConfig::from_probability(g, rep.p_minus, cfg.seed());
    const OccupiedEdgeSet first = sample_configuration(first_cfg, rng);
    const ClusterStats before = connected_components(g, first, true);
    rep.occupied_before = first.total_occupied();
    rep.cmax_before = before.cmax;

    std::vector<std::uint32_t> large_ids;
    for (std::uint32_t id = 0; id < before.component_size.size(); ++id) {
        if (before.component_size[id] >= rep.large_threshold) {
            large_ids.push_back(id);
        }
    }
    // Representative vertex of each large cluster: its first vertex in index order.
    std::vector<VertexId> first_vertex(before.component_size.size(), g.vertex_count());
    for (VertexId v = g.vertex_count(); v-- > 0;) {
        first_vertex[before.component[v]] = v;
    }
    std::vector<VertexId> reps;
    for (const std::uint32_t id : large_ids) {
        reps.push_back(first_vertex[id]);
    }
    for (const std::uint32_t id : large_ids) {
        rep.clusters_before.push_back(before.component_size[id]);
        rep.z_prime += before.component_size[id];
    }
    if (g.dimension() == 2) {
        for (const auto& [id, good] :
             large_cluster_good_lines(g, before, rep.large_threshold, rep.good_line_threshold)) {
            rep.good_lines.push_back(good);
        }
    }

    const OccupiedEdgeSet added = sample_vacant_edges(g, first, rep.sprinkle_prob, rng);
    rep.occupied_sprinkled = added.total_occupied();
    const OccupiedEdgeSet combined = OccupiedEdgeSet::merge(first, added);
    rep.occupied_after = combined.total_occupied();
    const ClusterStats after = connected_components(g, combined, true);
    rep.cmax_after = after.cmax;
    rep.merged_after = true;
    for (std::size_t j = 1; j < reps.size(); ++j) {
        if (after.component[reps[j]] != after.component[reps[0]]) {
            rep.merged_after = false;
        }
    }
    return rep;
}

} // namespace hamperc
