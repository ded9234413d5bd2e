#pragma once

#include <cstdint>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

struct BernoulliParams {
    double epsilon = 0.0;  // addition rate for absent edges
    double q = 1.0;        // keep rate for thinning
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Y = X plus each absent edge independently with probability epsilon.
// Deterministic given (seed, stream_id); iteration-order independent.
EdgeSet add_bernoulli(const EdgeSet& configuration, const BernoulliParams& params);

// Keep each present edge independently with probability q. A fixed
// (seed, stream_id) gives a monotone coupling across q values.
EdgeSet thin_bernoulli(const EdgeSet& configuration, const BernoulliParams& params);

struct ClusterLabeling {
    std::vector<std::int32_t> label;           // per vertex, 0..cluster_count-1
    std::vector<std::int64_t> sizes;           // per cluster
    std::vector<std::uint8_t> touches_boundary;  // per cluster
    int cluster_count = 0;
};

ClusterLabeling clusters(const EdgeSet& configuration);

// Some cluster touches both the left and right window sides.
bool has_left_right_crossing(const EdgeSet& configuration);

// True iff a path from x to y stays on vertices of `region`. The complement
// over Lambda(x, k) is the disconnection event E_k for neighbors x, y.
bool local_connected(const EdgeSet& configuration, VertexId x, VertexId y,
                     const BoxRegion& region);

// Scaled neighbors n*x and n*y joined inside Lambda(nx, n) u Lambda(ny, n);
// the close-connection event A_n defining one coarse edge.
bool closely_connected(const EdgeSet& configuration, VertexId coarse_x, VertexId coarse_y,
                       int scale);

// Renormalized configuration on the coarse lattice of step n. Coarse vertices
// whose box sticks out of the window are dropped (their edges marked invalid).
class CoarseEdgeSet {
  public:
    CoarseEdgeSet(int coarse_width, int coarse_height, int scale);

    int coarse_width() const { return width_; }
    int coarse_height() const { return height_; }
    int scale() const { return scale_; }
    int edge_count() const { return static_cast<int>(present_.size()); }

    int edge_index(VertexId coarse_origin, EdgeDir dir) const;
    bool present(int index) const { return present_[index]; }
    bool valid(int index) const { return valid_[index]; }
    bool present(VertexId coarse_origin, EdgeDir dir) const {
        return present_[edge_index(coarse_origin, dir)];
    }
    bool valid(VertexId coarse_origin, EdgeDir dir) const {
        return valid_[edge_index(coarse_origin, dir)];
    }

    void set(int index, bool is_present, bool is_valid) {
        present_[index] = is_present;
        valid_[index] = is_valid;
    }

  private:
    int width_;
    int height_;
    int scale_;
    std::vector<std::uint8_t> present_;
    std::vector<std::uint8_t> valid_;
};

// True iff the coarse vertex's box Lambda(n*c, n) lies fully inside the window.
bool coarse_vertex_valid(const LatticeWindow& window, VertexId coarse, int scale);

CoarseEdgeSet renormalize(const EdgeSet& configuration, int scale);

}  // namespace perc
