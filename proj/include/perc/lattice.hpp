#pragma once

#include <cstdint>
#include <vector>

namespace perc {

// half_plane tags the bottom row as the half-plane edge y = 0 (nothing below
// it); the stored geometry is the same rectangle either way.
enum class BoundaryMode { open_box, half_plane };

struct VertexId {
    int x = 0;
    int y = 0;

    friend bool operator==(VertexId a, VertexId b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(VertexId a, VertexId b) { return !(a == b); }
};

int l1_distance(VertexId u, VertexId v);
int linf_distance(VertexId u, VertexId v);

enum class EdgeDir : std::uint8_t { east = 0, north = 1 };

// Edges are identified by their lower-left endpoint and direction.
struct EdgeId {
    VertexId origin;
    EdgeDir dir = EdgeDir::east;

    friend bool operator==(EdgeId a, EdgeId b) { return a.origin == b.origin && a.dir == b.dir; }
    friend bool operator!=(EdgeId a, EdgeId b) { return !(a == b); }
};

// Finite rectangular window of Z^2 with vertices (x, y), 0 <= x < width,
// 0 <= y < height. East edges are indexed first, row-major, then north edges.
class LatticeWindow {
  public:
    LatticeWindow(int width, int height, BoundaryMode mode = BoundaryMode::open_box);

    int width() const { return width_; }
    int height() const { return height_; }
    BoundaryMode boundary_mode() const { return mode_; }

    int vertex_count() const { return width_ * height_; }
    int horizontal_edge_count() const { return (width_ - 1) * height_; }
    int vertical_edge_count() const { return width_ * (height_ - 1); }
    int edge_count() const { return horizontal_edge_count() + vertical_edge_count(); }

    bool contains(VertexId v) const {
        return v.x >= 0 && v.x < width_ && v.y >= 0 && v.y < height_;
    }
    bool contains(EdgeId e) const;
    bool on_boundary(VertexId v) const {
        return v.x == 0 || v.x == width_ - 1 || v.y == 0 || v.y == height_ - 1;
    }

    int vertex_index(VertexId v) const { return v.y * width_ + v.x; }
    VertexId vertex_at(int index) const { return {index % width_, index / width_}; }

    // bijection onto 0..edge_count-1; throws std::domain_error outside the window
    int edge_index(EdgeId e) const;
    EdgeId edge_at(int index) const;

    static VertexId far_end(EdgeId e) {
        return e.dir == EdgeDir::east ? VertexId{e.origin.x + 1, e.origin.y}
                                      : VertexId{e.origin.x, e.origin.y + 1};
    }

    friend bool operator==(const LatticeWindow& a, const LatticeWindow& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.mode_ == b.mode_;
    }
    friend bool operator!=(const LatticeWindow& a, const LatticeWindow& b) { return !(a == b); }

  private:
    int width_;
    int height_;
    BoundaryMode mode_;
};

// Box Lambda(center, side): |v - center|_inf <= floor(side/2), clipped to the
// window. Both parities of `side` resolve to an odd realized side length.
struct BoxRegion {
    LatticeWindow window{2, 2};
    VertexId center;
    int side = 1;
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;  // inclusive bounds after clipping
    bool clipped = false;

    bool empty() const { return x0 > x1 || y0 > y1; }
    bool contains(VertexId v) const {
        return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1;
    }
    long long vertex_count() const {
        return empty() ? 0 : static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1);
    }
};

BoxRegion box_region(const LatticeWindow& window, VertexId center, int side);
// same box parameterized by half-width; halfwidth 0 is the single center vertex
BoxRegion box_region_halfwidth(const LatticeWindow& window, VertexId center, int halfwidth);

// All edges with both endpoints in `region` (or in the union of the two
// regions). Throws std::domain_error when the regions disagree on the window.
std::vector<EdgeId> edges_within(const BoxRegion& region);
std::vector<EdgeId> edges_within(const BoxRegion& region, const BoxRegion& union_with);

// Dense bitset over the edges of a window.
class EdgeSet {
  public:
    explicit EdgeSet(const LatticeWindow& window);
    static EdgeSet full(const LatticeWindow& window);

    const LatticeWindow& window() const { return window_; }
    int size() const { return window_.edge_count(); }

    bool test(int index) const { return (bits_[index >> 6] >> (index & 63)) & 1u; }
    void set(int index) { bits_[index >> 6] |= std::uint64_t{1} << (index & 63); }
    void reset(int index) { bits_[index >> 6] &= ~(std::uint64_t{1} << (index & 63)); }

    bool test(EdgeId e) const { return test(window_.edge_index(e)); }
    void set(EdgeId e) { set(window_.edge_index(e)); }
    void reset(EdgeId e) { reset(window_.edge_index(e)); }

    int count() const;
    bool is_subset_of(const EdgeSet& other) const;

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
        return a.window_ == b.window_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const EdgeSet& a, const EdgeSet& b) { return !(a == b); }

  private:
    LatticeWindow window_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace perc
