#include "perc/duality.hpp"

#include <bit>
#include <cstdlib>

#include "perc/union_find.hpp"

namespace perc {

DualEdgeSet::DualEdgeSet(const LatticeWindow& window)
    : window_(window), bits_((edge_count() + 63) / 64, 0) {}

int DualEdgeSet::edge_index(DualVertexId origin, EdgeDir dir) const {
    const int dw = dual_width();
    const int dh = dual_height();
    if (dir == EdgeDir::east) {
        if (origin.i < 0 || origin.i + 1 >= dw || origin.j < 0 || origin.j >= dh)
            throw std::domain_error("dual edge outside dual window");
        return origin.j * (dw - 1) + origin.i;
    }
    if (origin.i < 0 || origin.i >= dw || origin.j < 0 || origin.j + 1 >= dh)
        throw std::domain_error("dual edge outside dual window");
    return east_edge_count() + origin.j * dw + origin.i;
}

int DualEdgeSet::count() const {
    int total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return total;
}

EdgeId DualEdgeSet::crossing_primal(DualVertexId origin, EdgeDir dir) const {
    // dual east (i,j)-(i+1,j) crosses the primal north edge at (i+1, j);
    // dual north (i,j)-(i,j+1) crosses the primal east edge at (i, j+1)
    if (dir == EdgeDir::east) return {{origin.i + 1, origin.j}, EdgeDir::north};
    return {{origin.i, origin.j + 1}, EdgeDir::east};
}

bool DualEdgeSet::has_dual(const LatticeWindow& window, EdgeId primal) {
    if (primal.dir == EdgeDir::north)
        return primal.origin.x >= 1 && primal.origin.x <= window.width() - 2;
    return primal.origin.y >= 1 && primal.origin.y <= window.height() - 2;
}

std::pair<DualVertexId, EdgeDir> DualEdgeSet::dual_of_primal(const LatticeWindow& window,
                                                             EdgeId primal) {
    if (!has_dual(window, primal))
        throw std::domain_error("primal edge on the window frame has no dual");
    if (primal.dir == EdgeDir::north)
        return {DualVertexId{primal.origin.x - 1, primal.origin.y}, EdgeDir::east};
    return {DualVertexId{primal.origin.x, primal.origin.y - 1}, EdgeDir::north};
}

DualEdgeSet to_dual(const EdgeSet& configuration) {
    const LatticeWindow& window = configuration.window();
    DualEdgeSet dual(window);
    const int dw = dual.dual_width();
    const int dh = dual.dual_height();
    for (int j = 0; j < dh; ++j)
        for (int i = 0; i + 1 < dw; ++i)
            if (!configuration.test(dual.crossing_primal({i, j}, EdgeDir::east)))
                dual.set(dual.edge_index({i, j}, EdgeDir::east));
    for (int j = 0; j + 1 < dh; ++j)
        for (int i = 0; i < dw; ++i)
            if (!configuration.test(dual.crossing_primal({i, j}, EdgeDir::north)))
                dual.set(dual.edge_index({i, j}, EdgeDir::north));
    return dual;
}

EdgeSet from_dual(const DualEdgeSet& dual) {
    const LatticeWindow& window = dual.window();
    EdgeSet primal = EdgeSet::full(window);
    const int dw = dual.dual_width();
    const int dh = dual.dual_height();
    for (int j = 0; j < dh; ++j)
        for (int i = 0; i + 1 < dw; ++i)
            if (dual.test(dual.edge_index({i, j}, EdgeDir::east)))
                primal.reset(dual.crossing_primal({i, j}, EdgeDir::east));
    for (int j = 0; j + 1 < dh; ++j)
        for (int i = 0; i < dw; ++i)
            if (dual.test(dual.edge_index({i, j}, EdgeDir::north)))
                primal.reset(dual.crossing_primal({i, j}, EdgeDir::north));
    return primal;
}

namespace {

template <class Visit>
void for_each_dual_edge(const DualEdgeSet& dual, Visit visit) {
    const int dw = dual.dual_width();
    const int dh = dual.dual_height();
    for (int j = 0; j < dh; ++j)
        for (int i = 0; i + 1 < dw; ++i)
            if (dual.test(dual.edge_index({i, j}, EdgeDir::east)))
                visit(DualVertexId{i, j}, DualVertexId{i + 1, j});
    for (int j = 0; j + 1 < dh; ++j)
        for (int i = 0; i < dw; ++i)
            if (dual.test(dual.edge_index({i, j}, EdgeDir::north)))
                visit(DualVertexId{i, j}, DualVertexId{i, j + 1});
}

}  // namespace

bool has_dual_cycle(const DualEdgeSet& dual) {
    UnionFind uf(dual.dual_vertex_count());
    bool cycle = false;
    for_each_dual_edge(dual, [&](DualVertexId a, DualVertexId b) {
        if (!uf.unite(dual.vertex_index(a), dual.vertex_index(b))) cycle = true;
    });
    return cycle;
}

DualClusterLabeling dual_clusters(const DualEdgeSet& dual) {
    const int n = dual.dual_vertex_count();
    UnionFind uf(n);
    for_each_dual_edge(dual, [&](DualVertexId a, DualVertexId b) {
        uf.unite(dual.vertex_index(a), dual.vertex_index(b));
    });

    DualClusterLabeling out;
    out.label.assign(n, -1);
    std::vector<std::int32_t> root_label(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        if (root_label[r] < 0) {
            root_label[r] = out.cluster_count++;
            out.sizes.push_back(0);
            out.min_i.push_back(dual.dual_width());
            out.max_i.push_back(-1);
            out.min_j.push_back(dual.dual_height());
            out.max_j.push_back(-1);
        }
        const int c = root_label[r];
        const DualVertexId face = dual.vertex_at(v);
        out.label[v] = c;
        out.sizes[c] += 1;
        out.min_i[c] = std::min(out.min_i[c], face.i);
        out.max_i[c] = std::max(out.max_i[c], face.i);
        out.min_j[c] = std::min(out.min_j[c], face.j);
        out.max_j[c] = std::max(out.max_j[c], face.j);
    }
    return out;
}

bool dual_vertex_in_box(DualVertexId face, VertexId center, int side) {
    // face center (i + 1/2, j + 1/2) within half-width side/2 of the center,
    // in integer arithmetic: |2(i - cx) + 1| <= side
    return std::abs(2 * (face.i - center.x) + 1) <= side &&
           std::abs(2 * (face.j - center.y) + 1) <= side;
}

namespace {

// directions in counterclockwise order
constexpr int kEast = 0, kNorth = 1, kWest = 2, kSouth = 3;
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

int direction_between(VertexId from, VertexId to) {
    if (to.x == from.x + 1) return kEast;
    if (to.x == from.x - 1) return kWest;
    if (to.y == from.y + 1) return kNorth;
    return kSouth;
}

bool step_present(const EdgeSet& configuration, VertexId from, int dir) {
    const VertexId to{from.x + kDx[dir], from.y + kDy[dir]};
    if (!configuration.window().contains(to)) return false;
    EdgeId e{from, dir == kEast || dir == kWest ? EdgeDir::east : EdgeDir::north};
    if (dir == kWest) e.origin.x -= 1;
    if (dir == kSouth) e.origin.y -= 1;
    return configuration.test(configuration.window().edge_index(e));
}

bool has_incident_edge(const EdgeSet& configuration, VertexId v) {
    for (int dir = 0; dir < 4; ++dir)
        if (step_present(configuration, v, dir)) return true;
    return false;
}

}  // namespace

std::vector<VertexId> boundary_walk_path(const EdgeSet& configuration, VertexId x, VertexId y) {
    const LatticeWindow& window = configuration.window();
    if (!window.contains(x) || !window.contains(y))
        throw std::domain_error("boundary_walk_path: endpoint outside window");
    if (x == y) return {x};
    if (l1_distance(x, y) != 1)
        throw std::domain_error("boundary_walk_path: endpoints must be nearest neighbors");

    VertexId lo = x, hi = y;
    if (lo.x > hi.x || lo.y > hi.y) std::swap(lo, hi);
    const EdgeId missing{lo, lo.y == hi.y ? EdgeDir::east : EdgeDir::north};
    if (configuration.test(missing)) return {x, y};

    if (!DualEdgeSet::has_dual(window, missing))
        throw UnclosableWalkError("crossing dual edge does not exist on this window");

    // The walk hugs the dual component of the crossing dual edge; it can only
    // close if that component stays off the window frame.
    const DualEdgeSet dual = to_dual(configuration);
    const DualClusterLabeling labeling = dual_clusters(dual);
    const auto [face, ddir] = DualEdgeSet::dual_of_primal(window, missing);
    const int cluster = labeling.label[dual.vertex_index(face)];
    if (labeling.min_i[cluster] == 0 || labeling.max_i[cluster] == dual.dual_width() - 1 ||
        labeling.min_j[cluster] == 0 || labeling.max_j[cluster] == dual.dual_height() - 1)
        throw UnclosableWalkError("dual component touches the window frame");
    if (!has_incident_edge(configuration, x) || !has_incident_edge(configuration, y))
        throw UnclosableWalkError("endpoint has no incident edge");

    // Clockwise boundary trace: arriving with some heading, turn as far right
    // as possible onto a present edge. Starting as if we came from y selects
    // the side of the missing edge whose face holds the dual component.
    std::vector<VertexId> path{x};
    VertexId current = x;
    int heading = direction_between(y, x);
    long long remaining = 4LL * window.edge_count() + 8;
    while (remaining-- > 0) {
        bool moved = false;
        for (int offset : {3, 0, 1, 2}) {  // right, straight, left, back
            const int candidate = (heading + offset) & 3;
            if (!step_present(configuration, current, candidate)) continue;
            current = {current.x + kDx[candidate], current.y + kDy[candidate]};
            heading = candidate;
            path.push_back(current);
            moved = true;
            break;
        }
        if (!moved) throw UnclosableWalkError("walk stuck at an isolated vertex");
        if (current == y) return path;
    }
    throw UnclosableWalkError("walk did not close");
}

}  // namespace perc
