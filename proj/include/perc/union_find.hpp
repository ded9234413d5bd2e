#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace perc {

// Disjoint sets with path halving and union by size.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    // false when a and b were already in the same set
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool connected(int a, int b) { return find(a) == find(b); }
    int component_size(int v) { return size_[find(v)]; }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace perc
