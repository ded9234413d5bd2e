#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "perc/lattice.hpp"

using namespace perc;

TEST_CASE("edge counts") {
    CHECK(LatticeWindow(3, 3).edge_count() == 12);
    CHECK(LatticeWindow(2, 2).edge_count() == 4);
    const LatticeWindow w(7, 4);
    CHECK(w.vertex_count() == 28);
    CHECK(w.horizontal_edge_count() == 6 * 4);
    CHECK(w.vertical_edge_count() == 7 * 3);
    CHECK_THROWS_AS(LatticeWindow(1, 5), std::domain_error);
}

TEST_CASE("edge index round-trips") {
    for (auto [w, h] : {std::pair{2, 2}, {4, 4}, {3, 5}, {17, 9}, {64, 64}}) {
        const LatticeWindow window(w, h);
        for (int i = 0; i < window.edge_count(); ++i)
            CHECK(window.edge_index(window.edge_at(i)) == i);
    }
}

TEST_CASE("edge index rejects out-of-window edges") {
    const LatticeWindow w(4, 4);
    CHECK_THROWS_AS(w.edge_index({{3, 0}, EdgeDir::east}), std::domain_error);
    CHECK_THROWS_AS(w.edge_index({{0, 3}, EdgeDir::north}), std::domain_error);
    CHECK_THROWS_AS(w.edge_index({{-1, 0}, EdgeDir::east}), std::domain_error);
}

TEST_CASE("box region resolution") {
    const LatticeWindow w(21, 21);
    CHECK(box_region(w, {10, 10}, 4).vertex_count() == 25);
    CHECK(box_region(w, {10, 10}, 5).vertex_count() == 25);
    CHECK(box_region(w, {10, 10}, 1).vertex_count() == 1);
    CHECK_FALSE(box_region(w, {10, 10}, 4).clipped);
    CHECK(box_region(w, {0, 0}, 4).clipped);
    CHECK(box_region(w, {0, 0}, 4).vertex_count() == 9);
    CHECK_THROWS_AS(box_region(w, {10, 10}, 0), std::domain_error);
}

TEST_CASE("box region monotone in side") {
    const LatticeWindow w(33, 33);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(0, 32), side(1, 40);
    for (int trial = 0; trial < 1000; ++trial) {
        const VertexId c{coord(rng), coord(rng)};
        int n = side(rng), m = side(rng);
        if (n > m) std::swap(n, m);
        const BoxRegion small = box_region(w, c, n);
        const BoxRegion big = box_region(w, c, m);
        CHECK(small.x0 >= big.x0);
        CHECK(small.x1 <= big.x1);
        CHECK(small.y0 >= big.y0);
        CHECK(small.y1 <= big.y1);
    }
}

TEST_CASE("l1 distance") {
    CHECK(l1_distance({0, 0}, {0, 0}) == 0);
    CHECK(l1_distance({1, 2}, {4, 0}) == 5);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coord(-50, 50);
    for (int trial = 0; trial < 100; ++trial) {
        const VertexId u{coord(rng), coord(rng)}, v{coord(rng), coord(rng)};
        CHECK(l1_distance(u, v) == l1_distance(v, u));
    }
}

TEST_CASE("edges within regions") {
    const LatticeWindow w(16, 16);
    CHECK(edges_within(box_region(w, {8, 8}, 1)).empty());
    CHECK(edges_within(box_region(w, {8, 8}, 3)).size() == 12);

    const BoxRegion a = box_region(w, {3, 3}, 3);
    const BoxRegion b = box_region(w, {12, 12}, 3);
    CHECK(edges_within(a, b).size() == edges_within(a).size() + edges_within(b).size());

    const LatticeWindow other(16, 17);
    CHECK_THROWS_AS(edges_within(a, box_region(other, {3, 3}, 3)), std::domain_error);
}

TEST_CASE("edges of a single box are edges of any union containing it") {
    const LatticeWindow w(20, 20);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(0, 19), side(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const BoxRegion a = box_region(w, {coord(rng), coord(rng)}, side(rng));
        const BoxRegion b = box_region(w, {coord(rng), coord(rng)}, side(rng));
        std::set<std::pair<int, int>> union_edges;
        for (const EdgeId& e : edges_within(a, b))
            union_edges.insert({w.edge_index(e), 0});
        for (const EdgeId& e : edges_within(a))
            CHECK(union_edges.count({w.edge_index(e), 0}) == 1);
    }
}

TEST_CASE("edge set basics") {
    const LatticeWindow w(5, 4);
    EdgeSet s(w);
    CHECK(s.count() == 0);
    s.set(EdgeId{{1, 1}, EdgeDir::east});
    CHECK(s.count() == 1);
    CHECK(s.test(EdgeId{{1, 1}, EdgeDir::east}));
    const EdgeSet f = EdgeSet::full(w);
    CHECK(f.count() == w.edge_count());
    CHECK(s.is_subset_of(f));
    CHECK_FALSE(f.is_subset_of(s));
}
