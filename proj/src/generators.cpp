#include "perc/generators.hpp"

#include <array>
#include <random>
#include <stdexcept>

#include "perc/percolation.hpp"

namespace perc {

std::string generator_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::foliation_horizontal: return "foliation-h";
        case GeneratorKind::foliation_vertical: return "foliation-v";
        case GeneratorKind::spanning_tree: return "spanning-tree";
        case GeneratorKind::comb: return "comb";
    }
    return "unknown";
}

GeneratorKind generator_from_name(const std::string& name) {
    if (name == "foliation-h") return GeneratorKind::foliation_horizontal;
    if (name == "foliation-v") return GeneratorKind::foliation_vertical;
    if (name == "spanning-tree") return GeneratorKind::spanning_tree;
    if (name == "comb") return GeneratorKind::comb;
    throw std::domain_error("unknown generator: " + name);
}

namespace {

EdgeSet foliation(const LatticeWindow& window, EdgeDir dir) {
    EdgeSet x(window);
    const int h = window.horizontal_edge_count();
    if (dir == EdgeDir::east) {
        for (int i = 0; i < h; ++i) x.set(i);
    } else {
        for (int i = h; i < window.edge_count(); ++i) x.set(i);
    }
    return x;
}

EdgeSet comb(const LatticeWindow& window, int spacing) {
    if (spacing < 1) throw std::domain_error("comb spacing must be positive");
    EdgeSet x(window);
    for (int cx = 0; cx + 1 < window.width(); ++cx)
        x.set(EdgeId{{cx, 0}, EdgeDir::east});
    for (int cx = 0; cx < window.width(); cx += spacing)
        for (int cy = 0; cy + 1 < window.height(); ++cy)
            x.set(EdgeId{{cx, cy}, EdgeDir::north});
    return x;
}

EdgeId edge_between(VertexId a, VertexId b) {
    if (a.x > b.x || a.y > b.y) std::swap(a, b);
    return {a, a.y == b.y ? EdgeDir::east : EdgeDir::north};
}

// Wilson's algorithm: loop-erased random walks from each unvisited vertex to
// the growing tree give a uniform spanning tree of the window.
EdgeSet wilson_spanning_tree(const LatticeWindow& window, std::uint64_t seed) {
    const int n = window.vertex_count();
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> in_tree(n, 0);
    std::vector<int> successor(n, -1);
    EdgeSet tree(window);
    in_tree[0] = 1;

    std::array<VertexId, 4> neighbors{};
    auto neighbor_count = [&](VertexId v) {
        int count = 0;
        if (v.x + 1 < window.width()) neighbors[count++] = {v.x + 1, v.y};
        if (v.x > 0) neighbors[count++] = {v.x - 1, v.y};
        if (v.y + 1 < window.height()) neighbors[count++] = {v.x, v.y + 1};
        if (v.y > 0) neighbors[count++] = {v.x, v.y - 1};
        return count;
    };

    for (int start = 1; start < n; ++start) {
        if (in_tree[start]) continue;
        int v = start;
        while (!in_tree[v]) {
            VertexId pos = window.vertex_at(v);
            const int deg = neighbor_count(pos);
            std::uniform_int_distribution<int> pick(0, deg - 1);
            successor[v] = window.vertex_index(neighbors[pick(rng)]);
            v = successor[v];
        }
        v = start;
        while (!in_tree[v]) {
            in_tree[v] = 1;
            tree.set(edge_between(window.vertex_at(v), window.vertex_at(successor[v])));
            v = successor[v];
        }
    }
    return tree;
}

}  // namespace

EdgeSet generate(const GeneratorSpec& spec, const LatticeWindow& window) {
    switch (spec.kind) {
        case GeneratorKind::foliation_horizontal: return foliation(window, EdgeDir::east);
        case GeneratorKind::foliation_vertical: return foliation(window, EdgeDir::north);
        case GeneratorKind::comb: return comb(window, spec.spacing);
        case GeneratorKind::spanning_tree: return wilson_spanning_tree(window, spec.seed);
    }
    throw std::domain_error("unknown generator kind");
}

bool is_everywhere_percolating(const EdgeSet& configuration) {
    const ClusterLabeling labeling = clusters(configuration);
    for (int v = 0; v < static_cast<int>(labeling.label.size()); ++v)
        if (!labeling.touches_boundary[labeling.label[v]]) return false;
    return true;
}

bool is_densely_percolating(const EdgeSet& configuration, int radius) {
    if (radius < 1) throw std::domain_error("radius must be positive");
    const LatticeWindow& window = configuration.window();
    const ClusterLabeling labeling = clusters(configuration);
    const int n = window.vertex_count();

    // multi-source BFS in the L1 metric from every percolating vertex
    std::vector<int> distance(n, -1);
    std::vector<int> queue;
    queue.reserve(n);
    for (int v = 0; v < n; ++v) {
        if (labeling.touches_boundary[labeling.label[v]]) {
            distance[v] = 0;
            queue.push_back(v);
        }
    }
    std::size_t head = 0;
    while (head < queue.size()) {
        const int v = queue[head++];
        if (distance[v] == radius) continue;
        const VertexId pos = window.vertex_at(v);
        const VertexId steps[4] = {{pos.x + 1, pos.y}, {pos.x - 1, pos.y},
                                   {pos.x, pos.y + 1}, {pos.x, pos.y - 1}};
        for (const VertexId& next : steps) {
            if (!window.contains(next)) continue;
            const int u = window.vertex_index(next);
            if (distance[u] < 0) {
                distance[u] = distance[v] + 1;
                queue.push_back(u);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (distance[v] < 0) return false;
    return true;
}

}  // namespace perc
