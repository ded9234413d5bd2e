#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

// Dual vertex (i, j) is the bounded face with corners (i, j) .. (i+1, j+1);
// 0 <= i < width-1, 0 <= j < height-1. The outer face is not modeled.
struct DualVertexId {
    int i = 0;
    int j = 0;

    friend bool operator==(DualVertexId a, DualVertexId b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(DualVertexId a, DualVertexId b) { return !(a == b); }
};

// Edge presence over the interior dual lattice. A dual edge exists for each
// primal edge whose two incident faces are both bounded; east dual edges are
// indexed first.
class DualEdgeSet {
  public:
    explicit DualEdgeSet(const LatticeWindow& window);

    const LatticeWindow& window() const { return window_; }
    int dual_width() const { return window_.width() - 1; }
    int dual_height() const { return window_.height() - 1; }
    int dual_vertex_count() const { return dual_width() * dual_height(); }
    int east_edge_count() const { return (dual_width() - 1) * dual_height(); }
    int north_edge_count() const { return dual_width() * (dual_height() - 1); }
    int edge_count() const { return east_edge_count() + north_edge_count(); }

    int vertex_index(DualVertexId v) const { return v.j * dual_width() + v.i; }
    DualVertexId vertex_at(int index) const {
        return {index % dual_width(), index / dual_width()};
    }

    int edge_index(DualVertexId origin, EdgeDir dir) const;

    bool test(int index) const { return (bits_[index >> 6] >> (index & 63)) & 1u; }
    void set(int index) { bits_[index >> 6] |= std::uint64_t{1} << (index & 63); }
    void reset(int index) { bits_[index >> 6] &= ~(std::uint64_t{1} << (index & 63)); }
    int count() const;

    // primal edge crossed by a given dual edge, and back
    EdgeId crossing_primal(DualVertexId origin, EdgeDir dir) const;
    static bool has_dual(const LatticeWindow& window, EdgeId primal);
    // valid only when has_dual(primal); returns (origin, dir) of the dual edge
    static std::pair<DualVertexId, EdgeDir> dual_of_primal(const LatticeWindow& window,
                                                           EdgeId primal);

    friend bool operator==(const DualEdgeSet& a, const DualEdgeSet& b) {
        return a.window_ == b.window_ && a.bits_ == b.bits_;
    }

  private:
    LatticeWindow window_;
    std::vector<std::uint64_t> bits_;
};

// dual edge present <=> crossing primal edge absent, on interior dual edges
DualEdgeSet to_dual(const EdgeSet& configuration);

// inverse on the interior; primal boundary edges (which have no dual) are set
// present
EdgeSet from_dual(const DualEdgeSet& dual);

bool has_dual_cycle(const DualEdgeSet& dual);

struct DualClusterLabeling {
    std::vector<std::int32_t> label;  // per dual vertex
    std::vector<std::int64_t> sizes;
    // bounding box of member faces, per cluster
    std::vector<int> min_i, max_i, min_j, max_j;
    int cluster_count = 0;
};

DualClusterLabeling dual_clusters(const DualEdgeSet& dual);

// Thrown when the clockwise walk around the dual component cannot close on the
// finite window (component touches the window frame, or an endpoint has no
// incident edge at all).
class UnclosableWalkError : public std::runtime_error {
  public:
    explicit UnclosableWalkError(const std::string& what) : std::runtime_error(what) {}
};

// Constructive path from x to y in the configuration: the edge itself when
// present, otherwise the clockwise walk along the outer boundary of the dual
// component containing the crossing dual edge. The result is a walk whose
// consecutive vertices are joined by present edges; it lies in Lambda(x, k)
// whenever the dual component lies in Lambda(x, k-1).
std::vector<VertexId> boundary_walk_path(const EdgeSet& configuration, VertexId x, VertexId y);

// Face (i, j), viewed as its center point, lies in Lambda(center, side).
bool dual_vertex_in_box(DualVertexId face, VertexId center, int side);

}  // namespace perc
