#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "hamperc/percolation.hpp"

namespace hamperc {

Explorer::Explorer(const HammingGraph& g)
    : graph_(g), n_(g.side()), whites_(std::size_t{2} * g.side() * g.side()), white_count_(2 * g.side(), g.side()),
      pos_h_(g.vertex_count()), pos_v_(g.vertex_count()), line_dirty_(2 * g.side(), 0), horiz_(g.side()),
      vert_(g.side())
{
    if (g.dimension() != 2) {
        throw std::domain_error("Explorer: line-counting exploration requires d = 2");
    }
    for (std::uint32_t line = 0; line < 2 * n_; ++line) {
        touched_.push_back(line);
    }
    restore();
}

void Explorer::restore()
{
    const std::size_t n = n_;
    for (const std::uint32_t line : touched_) {
        std::uint32_t* slots = whites_.data() + line * n;
        if (line < n_) {
            // horizontal line x: members x + j n at position j
            for (std::uint32_t j = 0; j < n_; ++j) {
                const auto v = static_cast<std::uint32_t>(line + j * n);
                slots[j] = v;
                pos_h_[v] = j;
            }
        } else {
            // vertical line y: members i + y n at position i
            const std::size_t y = line - n_;
            for (std::uint32_t i = 0; i < n_; ++i) {
                const auto v = static_cast<std::uint32_t>(i + y * n);
                slots[i] = v;
                pos_v_[v] = i;
            }
        }
        white_count_[line] = n_;
        line_dirty_[line] = 0;
    }
    touched_.clear();
}

void Explorer::make_green(VertexId u)
{
    const auto x = static_cast<std::uint32_t>(u % n_);
    const auto y = static_cast<std::uint32_t>(u / n_);
    const auto remove = [&](std::uint32_t line, std::vector<std::uint32_t>& pos) {
        std::uint32_t* slots = whites_.data() + std::size_t{line} * n_;
        const std::uint32_t at = pos[u];
        const std::uint32_t last = --white_count_[line];
        const std::uint32_t moved = slots[last];
        slots[at] = moved;
        pos[moved] = at;
        slots[last] = static_cast<std::uint32_t>(u);
        pos[u] = last;
        if (!line_dirty_[line]) {
            line_dirty_[line] = 1;
            touched_.push_back(line);
        }
    };
    remove(x, pos_h_);
    remove(n_ + y, pos_v_);
    ++horiz_[x];
    ++vert_[y];
    queue_.push_back(u);
}

ExplorationResult Explorer::run(double p, VertexId v0, std::uint64_t cap, Rng& rng, bool keep_members)
{
    if (cap == 0) {
        throw std::domain_error("explore_cluster: cap must be at least 1");
    }
    if (v0 >= graph_.vertex_count()) {
        throw std::domain_error("explore_cluster: origin " + std::to_string(v0) + " outside [0, V)");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("explore_cluster: p outside [0, 1]");
    }
    std::fill(horiz_.begin(), horiz_.end(), 0u);
    std::fill(vert_.begin(), vert_.end(), 0u);
    queue_.clear();

    make_green(v0);
    std::size_t head = 0;
    std::uint64_t steps = 0;
    while (head < queue_.size() && steps < cap) {
        const VertexId v = queue_[head++];
        const auto lines = {static_cast<std::uint32_t>(v % n_), static_cast<std::uint32_t>(n_ + v / n_)};
        for (const std::uint32_t line : lines) {
            const std::uint32_t w = white_count_[line];
            if (w == 0 || p <= 0.0) {
                continue;
            }
            std::binomial_distribution<std::uint32_t> open(w, p);
            const std::uint32_t k = open(rng);
            for (std::uint32_t i = 0; i < k; ++i) {
                const auto r = static_cast<std::uint32_t>(rng.below(white_count_[line]));
                make_green(whites_[std::size_t{line} * n_ + r]);
            }
        }
        ++steps;
    }

    ExplorationResult res;
    res.origin = v0;
    res.steps = steps;
    res.cluster_size = queue_.size();
    res.died_out = head == queue_.size() && steps < cap;
    res.horiz_counts = horiz_;
    res.vert_counts = vert_;
    if (keep_members) {
        res.members = queue_;
    }
    restore();
    return res;
}

ExplorationResult explore_cluster(const PercolationConfig& cfg, VertexId v0, std::uint64_t cap, std::uint64_t stream,
                                  bool keep_members)
{
    if (cap == 0) {
        throw std::domain_error("explore_cluster: cap must be at least 1");
    }
    Explorer explorer(cfg.graph());
    Rng rng = cfg.rng(stream);
    return explorer.run(cfg.p(), v0, cap, rng, keep_members);
}

} // namespace hamperc
