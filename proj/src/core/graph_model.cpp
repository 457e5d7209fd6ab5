#include "hamperc/graph_model.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace hamperc {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw std::overflow_error(std::string("HammingGraph: ") + what + " overflows 64 bits");
    }
    return a * b;
}

} // namespace

HammingGraph::HammingGraph(std::uint32_t d, std::uint32_t n) : d_(d), n_(n)
{
    if (d == 0) {
        throw std::invalid_argument("HammingGraph: dimension must be positive");
    }
    if (n < 2) {
        throw std::invalid_argument("HammingGraph: side length must be at least 2");
    }
    stride_.resize(d);
    std::uint64_t v = 1;
    for (std::uint32_t j = 0; j < d; ++j) {
        stride_[j] = v;
        v = checked_mul(v, n, "vertex count");
    }
    volume_ = v;
    degree_ = checked_mul(d, n - 1, "degree");
    // V * Omega / 2 without overflowing the intermediate product: one of
    // n and n - 1 is even.
    const std::uint64_t half_line = (n % 2 == 0) ? std::uint64_t{n / 2} * (n - 1)
                                                 : std::uint64_t{n} * ((n - 1) / 2);
    edges_ = checked_mul(checked_mul(volume_ / n, half_line, "edge count"), d, "edge count");
}

VertexId HammingGraph::vertex_index(std::span<const std::uint32_t> coords) const
{
    if (coords.size() != d_) {
        throw std::domain_error("vertex_index: expected " + std::to_string(d_) + " coordinates, got " +
                                std::to_string(coords.size()));
    }
    VertexId index = 0;
    for (std::uint32_t j = 0; j < d_; ++j) {
        if (coords[j] >= n_) {
            throw std::domain_error("vertex_index: coordinate " + std::to_string(j) + " = " +
                                    std::to_string(coords[j]) + " outside [0, " + std::to_string(n_) + ")");
        }
        index += coords[j] * stride_[j];
    }
    return index;
}

Vertex HammingGraph::vertex_from_index(VertexId index) const
{
    if (index >= volume_) {
        throw std::domain_error("vertex_from_index: index " + std::to_string(index) + " outside [0, V)");
    }
    Vertex coords(d_);
    for (std::uint32_t j = 0; j < d_; ++j) {
        coords[j] = static_cast<std::uint32_t>(index % n_);
        index /= n_;
    }
    return coords;
}

std::vector<Vertex> HammingGraph::neighbors(std::span<const std::uint32_t> coords) const
{
    vertex_index(coords); // validates
    std::vector<Vertex> out;
    out.reserve(degree_);
    for (std::uint32_t axis = 0; axis < d_; ++axis) {
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (x == coords[axis]) {
                continue;
            }
            Vertex w(coords.begin(), coords.end());
            w[axis] = x;
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<VertexId> HammingGraph::neighbor_indices(VertexId v) const
{
    if (v >= volume_) {
        throw std::domain_error("neighbor_indices: vertex index outside [0, V)");
    }
    std::vector<VertexId> out;
    out.reserve(degree_);
    for (std::uint32_t axis = 0; axis < d_; ++axis) {
        const std::uint32_t own = coordinate(v, axis);
        const VertexId base = v - own * stride_[axis];
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (x != own) {
                out.push_back(base + x * stride_[axis]);
            }
        }
    }
    return out;
}

std::uint64_t HammingGraph::line_index(VertexId v, std::uint32_t axis) const noexcept
{
    const std::uint64_t s = stride_[axis];
    const std::uint64_t low = v % s;
    const std::uint64_t high = v / (s * n_);
    return low + high * s;
}

VertexId HammingGraph::line_member(std::uint32_t axis, std::uint64_t index, std::uint32_t position) const noexcept
{
    const std::uint64_t s = stride_[axis];
    const std::uint64_t low = index % s;
    const std::uint64_t high = index / s;
    return low + position * s + high * s * n_;
}

Line HammingGraph::line(std::uint32_t axis, std::uint64_t index) const
{
    if (axis >= d_ || index >= lines_per_axis()) {
        throw std::domain_error("line: axis or index out of range");
    }
    Line l{axis, index, {}};
    l.members.reserve(n_);
    for (std::uint32_t x = 0; x < n_; ++x) {
        l.members.push_back(line_member(axis, index, x));
    }
    return l;
}

std::vector<Line> HammingGraph::lines() const
{
    std::vector<Line> out;
    out.reserve(line_count());
    for (std::uint32_t axis = 0; axis < d_; ++axis) {
        for (std::uint64_t i = 0; i < lines_per_axis(); ++i) {
            out.push_back(line(axis, i));
        }
    }
    return out;
}

} // namespace hamperc
