#include "perc/percolation.hpp"

#include <stdexcept>

#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(std::string(what) + " must be in [0, 1]");
}

}  // namespace

EdgeSet add_bernoulli(const EdgeSet& configuration, const BernoulliParams& params) {
    check_probability(params.epsilon, "epsilon");
    EdgeSet result = configuration;
    const int edges = result.size();
    for (int e = 0; e < edges; ++e) {
        if (result.test(e)) continue;
        if (uniform01(params.seed, params.stream_id, rng_purpose::add_edges, e) < params.epsilon)
            result.set(e);
    }
    return result;
}

EdgeSet thin_bernoulli(const EdgeSet& configuration, const BernoulliParams& params) {
    check_probability(params.q, "q");
    EdgeSet result = configuration;
    const int edges = result.size();
    for (int e = 0; e < edges; ++e) {
        if (!result.test(e)) continue;
        if (!(uniform01(params.seed, params.stream_id, rng_purpose::thin_edges, e) < params.q))
            result.reset(e);
    }
    return result;
}

ClusterLabeling clusters(const EdgeSet& configuration) {
    const LatticeWindow& window = configuration.window();
    const int n = window.vertex_count();
    UnionFind uf(n);

    const int w = window.width();
    const int h = window.height();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x + 1 < w; ++x)
            if (configuration.test(y * (w - 1) + x)) uf.unite(y * w + x, y * w + x + 1);
    const int offset = window.horizontal_edge_count();
    for (int y = 0; y + 1 < h; ++y)
        for (int x = 0; x < w; ++x)
            if (configuration.test(offset + y * w + x)) uf.unite(y * w + x, (y + 1) * w + x);

    ClusterLabeling out;
    out.label.assign(n, -1);
    std::vector<std::int32_t> root_label(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        if (root_label[r] < 0) {
            root_label[r] = out.cluster_count++;
            out.sizes.push_back(0);
            out.touches_boundary.push_back(0);
        }
        const int c = root_label[r];
        out.label[v] = c;
        out.sizes[c] += 1;
        if (window.on_boundary(window.vertex_at(v))) out.touches_boundary[c] = 1;
    }
    return out;
}

bool has_left_right_crossing(const EdgeSet& configuration) {
    const LatticeWindow& window = configuration.window();
    const int n = window.vertex_count();
    const int w = window.width();
    const int h = window.height();
    // virtual side vertices n (left) and n+1 (right)
    UnionFind uf(n + 2);
    for (int y = 0; y < h; ++y) {
        uf.unite(n, y * w);
        uf.unite(n + 1, y * w + w - 1);
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x + 1 < w; ++x)
            if (configuration.test(y * (w - 1) + x)) uf.unite(y * w + x, y * w + x + 1);
    const int offset = window.horizontal_edge_count();
    for (int y = 0; y + 1 < h; ++y)
        for (int x = 0; x < w; ++x)
            if (configuration.test(offset + y * w + x)) uf.unite(y * w + x, (y + 1) * w + x);
    return uf.connected(n, n + 1);
}

namespace {

// BFS over present edges restricted to an arbitrary membership predicate.
template <class Member>
bool restricted_connected(const EdgeSet& configuration, VertexId from, VertexId to,
                          Member in_region) {
    if (from == to) return true;
    const LatticeWindow& window = configuration.window();
    thread_local std::vector<std::uint32_t> visited;
    thread_local std::uint32_t generation = 0;
    const std::size_t n = static_cast<std::size_t>(window.vertex_count());
    if (visited.size() < n) visited.assign(n, 0);
    ++generation;
    if (generation == 0) {  // stamp wrap, clear and restart
        visited.assign(visited.size(), 0);
        generation = 1;
    }

    std::vector<int> queue;
    queue.push_back(window.vertex_index(from));
    visited[queue[0]] = generation;
    const int target = window.vertex_index(to);
    std::size_t head = 0;
    while (head < queue.size()) {
        const VertexId v = window.vertex_at(queue[head++]);
        const EdgeId out[4] = {{{v.x, v.y}, EdgeDir::east},
                               {{v.x - 1, v.y}, EdgeDir::east},
                               {{v.x, v.y}, EdgeDir::north},
                               {{v.x, v.y - 1}, EdgeDir::north}};
        const VertexId next[4] = {{v.x + 1, v.y}, {v.x - 1, v.y}, {v.x, v.y + 1}, {v.x, v.y - 1}};
        for (int d = 0; d < 4; ++d) {
            if (!window.contains(next[d])) continue;
            if (!in_region(next[d])) continue;
            if (!configuration.test(window.edge_index(out[d]))) continue;
            const int u = window.vertex_index(next[d]);
            if (visited[u] == generation) continue;
            if (u == target) return true;
            visited[u] = generation;
            queue.push_back(u);
        }
    }
    return false;
}

}  // namespace

bool local_connected(const EdgeSet& configuration, VertexId x, VertexId y,
                     const BoxRegion& region) {
    if (region.window != configuration.window())
        throw std::domain_error("local_connected: region from a different window");
    if (!region.contains(x) || !region.contains(y))
        throw std::domain_error("local_connected: endpoint outside region");
    return restricted_connected(configuration, x, y,
                                [&](VertexId v) { return region.contains(v); });
}

bool closely_connected(const EdgeSet& configuration, VertexId coarse_x, VertexId coarse_y,
                       int scale) {
    if (scale < 1) throw std::domain_error("closely_connected: scale must be positive");
    if (l1_distance(coarse_x, coarse_y) != 1)
        throw std::domain_error("closely_connected: coarse vertices must be nearest neighbors");
    const LatticeWindow& window = configuration.window();
    const VertexId fine_x{coarse_x.x * scale, coarse_x.y * scale};
    const VertexId fine_y{coarse_y.x * scale, coarse_y.y * scale};
    if (!window.contains(fine_x) || !window.contains(fine_y))
        throw std::domain_error("closely_connected: scaled point outside window");
    const BoxRegion box_x = box_region(window, fine_x, scale);
    const BoxRegion box_y = box_region(window, fine_y, scale);
    return restricted_connected(configuration, fine_x, fine_y, [&](VertexId v) {
        return box_x.contains(v) || box_y.contains(v);
    });
}

CoarseEdgeSet::CoarseEdgeSet(int coarse_width, int coarse_height, int scale)
    : width_(coarse_width), height_(coarse_height), scale_(scale) {
    if (coarse_width < 1 || coarse_height < 1)
        throw std::domain_error("coarse window is empty");
    const int edges = (coarse_width - 1) * coarse_height + coarse_width * (coarse_height - 1);
    present_.assign(edges, 0);
    valid_.assign(edges, 0);
}

int CoarseEdgeSet::edge_index(VertexId origin, EdgeDir dir) const {
    if (dir == EdgeDir::east) {
        if (origin.x < 0 || origin.x + 1 >= width_ || origin.y < 0 || origin.y >= height_)
            throw std::domain_error("coarse edge outside coarse window");
        return origin.y * (width_ - 1) + origin.x;
    }
    if (origin.x < 0 || origin.x >= width_ || origin.y < 0 || origin.y + 1 >= height_)
        throw std::domain_error("coarse edge outside coarse window");
    return (width_ - 1) * height_ + origin.y * width_ + origin.x;
}

bool coarse_vertex_valid(const LatticeWindow& window, VertexId coarse, int scale) {
    const int half = scale / 2;
    const int cx = coarse.x * scale;
    const int cy = coarse.y * scale;
    return cx - half >= 0 && cx + half <= window.width() - 1 && cy - half >= 0 &&
           cy + half <= window.height() - 1;
}

CoarseEdgeSet renormalize(const EdgeSet& configuration, int scale) {
    if (scale < 2) throw std::domain_error("renormalize: scale must be at least 2");
    const LatticeWindow& window = configuration.window();
    const int cw = window.width() / scale;
    const int ch = window.height() / scale;
    if (cw < 1 || ch < 1) throw std::domain_error("renormalize: scale larger than window");

    CoarseEdgeSet coarse(cw, ch, scale);
    auto fill = [&](VertexId a, VertexId b, EdgeDir dir) {
        const bool valid = coarse_vertex_valid(window, a, scale) &&
                           coarse_vertex_valid(window, b, scale);
        const bool present = valid && closely_connected(configuration, a, b, scale);
        coarse.set(coarse.edge_index(a, dir), present, valid);
    };
    for (int j = 0; j < ch; ++j)
        for (int i = 0; i + 1 < cw; ++i) fill({i, j}, {i + 1, j}, EdgeDir::east);
    for (int j = 0; j + 1 < ch; ++j)
        for (int i = 0; i < cw; ++i) fill({i, j}, {i, j + 1}, EdgeDir::north);
    return coarse;
}

}  // namespace perc
