#include "perc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace perc {

int l1_distance(VertexId u, VertexId v) {
    return std::abs(u.x - v.x) + std::abs(u.y - v.y);
}

int linf_distance(VertexId u, VertexId v) {
    return std::max(std::abs(u.x - v.x), std::abs(u.y - v.y));
}

LatticeWindow::LatticeWindow(int width, int height, BoundaryMode mode)
    : width_(width), height_(height), mode_(mode) {
    if (width < 2 || height < 2)
        throw std::domain_error("lattice window must be at least 2x2");
}

bool LatticeWindow::contains(EdgeId e) const {
    return contains(e.origin) && contains(far_end(e));
}

int LatticeWindow::edge_index(EdgeId e) const {
    if (!contains(e)) throw std::domain_error("edge outside window");
    if (e.dir == EdgeDir::east) return e.origin.y * (width_ - 1) + e.origin.x;
    return horizontal_edge_count() + e.origin.y * width_ + e.origin.x;
}

EdgeId LatticeWindow::edge_at(int index) const {
    if (index < 0 || index >= edge_count()) throw std::domain_error("edge index out of range");
    const int h = horizontal_edge_count();
    if (index < h) return {{index % (width_ - 1), index / (width_ - 1)}, EdgeDir::east};
    index -= h;
    return {{index % width_, index / width_}, EdgeDir::north};
}

BoxRegion box_region(const LatticeWindow& window, VertexId center, int side) {
    if (side < 1) throw std::domain_error("box side must be positive");
    return box_region_halfwidth(window, center, side / 2);
}

BoxRegion box_region_halfwidth(const LatticeWindow& window, VertexId center, int halfwidth) {
    BoxRegion r;
    r.window = window;
    r.center = center;
    r.side = 2 * halfwidth + 1;
    r.x0 = std::max(0, center.x - halfwidth);
    r.x1 = std::min(window.width() - 1, center.x + halfwidth);
    r.y0 = std::max(0, center.y - halfwidth);
    r.y1 = std::min(window.height() - 1, center.y + halfwidth);
    r.clipped = r.x0 != center.x - halfwidth || r.x1 != center.x + halfwidth ||
                r.y0 != center.y - halfwidth || r.y1 != center.y + halfwidth;
    return r;
}

namespace {

template <class Member>
std::vector<EdgeId> collect_edges(const LatticeWindow& window, int x0, int x1, int y0, int y1,
                                  Member in_region) {
    std::vector<EdgeId> edges;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            VertexId v{x, y};
            if (!in_region(v)) continue;
            EdgeId east{{x, y}, EdgeDir::east};
            if (window.contains(east) && in_region(LatticeWindow::far_end(east)))
                edges.push_back(east);
            EdgeId north{{x, y}, EdgeDir::north};
            if (window.contains(north) && in_region(LatticeWindow::far_end(north)))
                edges.push_back(north);
        }
    }
    return edges;
}

}  // namespace

std::vector<EdgeId> edges_within(const BoxRegion& region) {
    if (region.empty()) return {};
    return collect_edges(region.window, region.x0, region.x1, region.y0, region.y1,
                         [&](VertexId v) { return region.contains(v); });
}

std::vector<EdgeId> edges_within(const BoxRegion& region, const BoxRegion& union_with) {
    if (region.window != union_with.window)
        throw std::domain_error("edges_within: regions belong to different windows");
    const int x0 = std::min(region.x0, union_with.x0);
    const int x1 = std::max(region.x1, union_with.x1);
    const int y0 = std::min(region.y0, union_with.y0);
    const int y1 = std::max(region.y1, union_with.y1);
    if (region.empty() && union_with.empty()) return {};
    return collect_edges(region.window, x0, x1, y0, y1, [&](VertexId v) {
        return region.contains(v) || union_with.contains(v);
    });
}

EdgeSet::EdgeSet(const LatticeWindow& window)
    : window_(window), bits_((window.edge_count() + 63) / 64, 0) {}

EdgeSet EdgeSet::full(const LatticeWindow& window) {
    EdgeSet s(window);
    for (int i = 0; i < s.size(); ++i) s.set(i);
    return s;
}

int EdgeSet::count() const {
    int total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return total;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
    if (window_ != other.window_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~other.bits_[i]) return false;
    return true;
}

}  // namespace perc
