#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hamperc {

using VertexId = std::uint64_t;

// Coordinates are 0-based: vertex (v_0, ..., v_{d-1}) has linear index
// sum_j v_j * n^j.
using Vertex = std::vector<std::uint32_t>;

// A coordinate line: the n vertices that agree everywhere except on `axis`.
// `index` is the mixed-radix index of the remaining d-1 coordinates. For d = 2
// the line with axis 1 and index i is the i-th horizontal line {(i, x)}; the
// line with axis 0 and index i is the i-th vertical line {(x, i)}.
struct Line {
    std::uint32_t axis = 0;
    std::uint64_t index = 0;
    std::vector<VertexId> members;
};

// Implicit Hamming graph H(d, n). Immutable; no edges are stored.
class HammingGraph {
public:
    // Throws std::invalid_argument for d == 0 or n < 2, std::overflow_error
    // when n^d or the edge count does not fit in 64 bits.
    HammingGraph(std::uint32_t d, std::uint32_t n);

    std::uint32_t dimension() const noexcept { return d_; }
    std::uint32_t side() const noexcept { return n_; }
    std::uint64_t vertex_count() const noexcept { return volume_; }
    std::uint64_t degree() const noexcept { return degree_; }
    std::uint64_t edge_count() const noexcept { return edges_; }

    std::uint64_t lines_per_axis() const noexcept { return volume_ / n_; }
    std::uint64_t line_count() const noexcept { return lines_per_axis() * d_; }
    std::uint64_t edges_per_line() const noexcept
    {
        return std::uint64_t{n_} * (n_ - 1) / 2;
    }

    VertexId vertex_index(std::span<const std::uint32_t> coords) const;
    Vertex vertex_from_index(VertexId index) const;

    std::uint32_t coordinate(VertexId v, std::uint32_t axis) const noexcept
    {
        return static_cast<std::uint32_t>((v / stride_[axis]) % n_);
    }
    std::uint64_t stride(std::uint32_t axis) const noexcept { return stride_[axis]; }

    std::vector<Vertex> neighbors(std::span<const std::uint32_t> coords) const;
    std::vector<VertexId> neighbor_indices(VertexId v) const;

    // Index (within its axis) of the line through v varying `axis`.
    std::uint64_t line_index(VertexId v, std::uint32_t axis) const noexcept;
    // Global line id: axis * lines_per_axis() + line index.
    std::uint64_t line_id(VertexId v, std::uint32_t axis) const noexcept
    {
        return axis * lines_per_axis() + line_index(v, axis);
    }
    // Vertex at `position` along line (axis, index).
    VertexId line_member(std::uint32_t axis, std::uint64_t index, std::uint32_t position) const noexcept;

    Line line(std::uint32_t axis, std::uint64_t index) const;
    std::vector<Line> lines() const;

private:
    std::uint32_t d_;
    std::uint32_t n_;
    std::uint64_t volume_;
    std::uint64_t degree_;
    std::uint64_t edges_;
    std::vector<std::uint64_t> stride_;
};

} // namespace hamperc
