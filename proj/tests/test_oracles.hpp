#pragma once

// Reference implementations used only to cross-check the library: plain BFS
// labelings independent of the union-find code paths.

#include <cstdint>
#include <vector>

#include "perc/duality.hpp"
#include "perc/lattice.hpp"

namespace perc::test {

// component id per vertex in first-seen order
inline std::vector<int> bfs_labels(const EdgeSet& configuration) {
    const LatticeWindow& window = configuration.window();
    const int n = window.vertex_count();
    std::vector<int> label(n, -1);
    std::vector<int> queue;
    int next_label = 0;
    for (int s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next_label;
        queue.assign(1, s);
        std::size_t head = 0;
        while (head < queue.size()) {
            const VertexId v = window.vertex_at(queue[head++]);
            const VertexId around[4] = {{v.x + 1, v.y}, {v.x - 1, v.y},
                                        {v.x, v.y + 1}, {v.x, v.y - 1}};
            for (const VertexId& u : around) {
                if (!window.contains(u)) continue;
                VertexId a = v, b = u;
                if (a.x > b.x || a.y > b.y) std::swap(a, b);
                const EdgeId e{a, a.y == b.y ? EdgeDir::east : EdgeDir::north};
                if (!configuration.test(e)) continue;
                const int ui = window.vertex_index(u);
                if (label[ui] >= 0) continue;
                label[ui] = next_label;
                queue.push_back(ui);
            }
        }
        ++next_label;
    }
    return label;
}

inline std::vector<int> bfs_dual_labels(const DualEdgeSet& dual) {
    const int dw = dual.dual_width();
    const int dh = dual.dual_height();
    const int n = dual.dual_vertex_count();
    std::vector<int> label(n, -1);
    std::vector<int> queue;
    int next_label = 0;
    auto edge_present = [&](DualVertexId a, EdgeDir dir) {
        return dual.test(dual.edge_index(a, dir));
    };
    for (int s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next_label;
        queue.assign(1, s);
        std::size_t head = 0;
        while (head < queue.size()) {
            const DualVertexId v = dual.vertex_at(queue[head++]);
            struct Step {
                DualVertexId to;
                DualVertexId edge_origin;
                EdgeDir dir;
                bool ok;
            };
            const Step steps[4] = {
                {{v.i + 1, v.j}, {v.i, v.j}, EdgeDir::east, v.i + 1 < dw},
                {{v.i - 1, v.j}, {v.i - 1, v.j}, EdgeDir::east, v.i > 0},
                {{v.i, v.j + 1}, {v.i, v.j}, EdgeDir::north, v.j + 1 < dh},
                {{v.i, v.j - 1}, {v.i, v.j - 1}, EdgeDir::north, v.j > 0},
            };
            for (const Step& st : steps) {
                if (!st.ok || !edge_present(st.edge_origin, st.dir)) continue;
                const int ui = dual.vertex_index(st.to);
                if (label[ui] >= 0) continue;
                label[ui] = next_label;
                queue.push_back(ui);
            }
        }
        ++next_label;
    }
    return label;
}

// two labelings induce the same partition
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> a_to_b, b_to_a;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] >= static_cast<int>(a_to_b.size())) a_to_b.resize(a[v] + 1, -1);
        if (b[v] >= static_cast<int>(b_to_a.size())) b_to_a.resize(b[v] + 1, -1);
        if (a_to_b[a[v]] < 0) a_to_b[a[v]] = b[v];
        if (b_to_a[b[v]] < 0) b_to_a[b[v]] = a[v];
        if (a_to_b[a[v]] != b[v] || b_to_a[b[v]] != a[v]) return false;
    }
    return true;
}

// path connectivity restricted to a vertex predicate, breadth-first
template <class Member>
bool bfs_connected_within(const EdgeSet& configuration, VertexId from, VertexId to,
                          Member member) {
    if (from == to) return true;
    const LatticeWindow& window = configuration.window();
    std::vector<std::uint8_t> seen(window.vertex_count(), 0);
    std::vector<int> queue{window.vertex_index(from)};
    seen[queue[0]] = 1;
    std::size_t head = 0;
    while (head < queue.size()) {
        const VertexId v = window.vertex_at(queue[head++]);
        const VertexId around[4] = {{v.x + 1, v.y}, {v.x - 1, v.y},
                                    {v.x, v.y + 1}, {v.x, v.y - 1}};
        for (const VertexId& u : around) {
            if (!window.contains(u) || !member(u)) continue;
            VertexId a = v, b = u;
            if (a.x > b.x || a.y > b.y) std::swap(a, b);
            const EdgeId e{a, a.y == b.y ? EdgeDir::east : EdgeDir::north};
            if (!configuration.test(e)) continue;
            if (u == to) return true;
            const int ui = window.vertex_index(u);
            if (seen[ui]) continue;
            seen[ui] = 1;
            queue.push_back(ui);
        }
    }
    return false;
}

}  // namespace perc::test
