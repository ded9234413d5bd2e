#include "perc/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "perc/runner.hpp"
#include "perc/union_find.hpp"

namespace perc {

int annulus_outer_halfwidth(int scale) {
    if (scale < 1 || scale > 30) throw std::domain_error("annulus scale out of range");
    return 1 << (scale - 1);
}

int annulus_thickness(int scale) {
    return static_cast<int>(std::ceil(std::exp2(0.5 * (scale + 1))));
}

AnnulusRegion make_annulus_ring(VertexId center, int scale) {
    const int outer = annulus_outer_halfwidth(scale);
    const int floor_inner = scale >= 2 ? 1 : 0;
    AnnulusRegion region;
    region.center = center;
    region.scale = scale;
    region.outer_halfwidth = outer;
    region.inner_halfwidth = std::max(outer - annulus_thickness(scale), floor_inner);
    return region;
}

AnnulusRegion annulus_region(VertexId center, int scale) {
    if (scale < 2) throw std::domain_error("annulus_region: scale must be at least 2");
    return make_annulus_ring(center, scale);
}

namespace {

struct Rect {
    int x0, x1, y0, y1;  // inclusive; empty when x0 > x1
    bool empty() const { return x0 > x1 || y0 > y1; }
    bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

Rect outer_rect(const AnnulusRegion& r) {
    return {r.center.x - r.outer_halfwidth, r.center.x + r.outer_halfwidth,
            r.center.y - r.outer_halfwidth, r.center.y + r.outer_halfwidth};
}

Rect inner_rect(const AnnulusRegion& r) {
    return {r.center.x - r.inner_halfwidth, r.center.x + r.inner_halfwidth,
            r.center.y - r.inner_halfwidth, r.center.y + r.inner_halfwidth};
}

}  // namespace

bool annuli_overlap(const AnnulusRegion& a, const AnnulusRegion& b) {
    const Rect ra = outer_rect(a), rb = outer_rect(b);
    const Rect common{std::max(ra.x0, rb.x0), std::min(ra.x1, rb.x1),
                      std::max(ra.y0, rb.y0), std::min(ra.y1, rb.y1)};
    if (common.empty()) return false;
    const Rect ia = inner_rect(a), ib = inner_rect(b);

    // A point of common \ (ia u ib), when one exists, can be found at the
    // axis breakpoints induced by the two inner boxes.
    int xs[6] = {common.x0, common.x1, ia.x0 - 1, ia.x1 + 1, ib.x0 - 1, ib.x1 + 1};
    int ys[6] = {common.y0, common.y1, ia.y0 - 1, ia.y1 + 1, ib.y0 - 1, ib.y1 + 1};
    for (int x : xs) {
        if (x < common.x0 || x > common.x1) continue;
        for (int y : ys) {
            if (y < common.y0 || y > common.y1) continue;
            if (!ia.contains(x, y) && !ib.contains(x, y)) return true;
        }
    }
    return false;
}

std::vector<AnnulusActivation> sample_activations(const CounterexampleConfig& config) {
    const LatticeWindow& window = config.window;
    std::vector<AnnulusActivation> activations;
    const int fit = std::min(window.width(), window.height());
    for (int n = 1; n <= config.n_max; ++n) {
        if ((1LL << n) > fit) break;
        const double p = std::exp2(-2.0 * n);
        for (int v = 0; v < window.vertex_count(); ++v) {
            const std::uint64_t counter =
                static_cast<std::uint64_t>(n) * window.vertex_count() + v;
            if (uniform01(config.seed, 0, rng_purpose::activations, counter) < p)
                activations.push_back({window.vertex_at(v), n, true, false});
        }
    }
    std::sort(activations.begin(), activations.end(),
              [](const AnnulusActivation& a, const AnnulusActivation& b) {
                  if (a.scale != b.scale) return a.scale < b.scale;
                  if (a.center.y != b.center.y) return a.center.y < b.center.y;
                  return a.center.x < b.center.x;
              });
    return activations;
}

std::vector<AnnulusActivation> resolve_b_flags(std::vector<AnnulusActivation> activations) {
    std::vector<AnnulusRegion> rings;
    rings.reserve(activations.size());
    for (const AnnulusActivation& act : activations)
        rings.push_back(make_annulus_ring(act.center, act.scale));

    for (std::size_t i = 0; i < activations.size(); ++i) {
        bool clear = true;
        for (std::size_t j = 0; j < activations.size() && clear; ++j) {
            if (j == i) continue;
            if (activations[j].scale > activations[i].scale) continue;
            if (annuli_overlap(rings[i], rings[j])) clear = false;
        }
        activations[i].b_flag = clear;
    }
    return activations;
}

std::vector<EdgeId> removed_edge_set(const LatticeWindow& window, const AnnulusRegion& region) {
    std::vector<EdgeId> removed;
    const Rect outer = outer_rect(region);
    const int x0 = std::max(0, outer.x0);
    const int x1 = std::min(window.width() - 1, outer.x1);
    const int y0 = std::max(0, outer.y0);
    const int y1 = std::min(window.height() - 1, outer.y1);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const VertexId v{x, y};
            if (!region.contains(v)) continue;
            const EdgeId east{v, EdgeDir::east};
            if (window.contains(east) && region.contains(LatticeWindow::far_end(east)) &&
                y != region.center.y)
                removed.push_back(east);
            const EdgeId north{v, EdgeDir::north};
            if (window.contains(north) && region.contains(LatticeWindow::far_end(north)))
                removed.push_back(north);
        }
    }
    return removed;
}

EdgeSet build_X(const CounterexampleConfig& config) {
    EdgeSet x = EdgeSet::full(config.window);
    const std::vector<AnnulusActivation> activations =
        resolve_b_flags(sample_activations(config));
    for (const AnnulusActivation& act : activations) {
        if (!(act.a_flag && act.b_flag)) continue;
        for (const EdgeId& e : removed_edge_set(config.window, make_annulus_ring(act.center, act.scale)))
            x.reset(e);
    }
    return x;
}

namespace {

EdgeSet carve_single_annulus(const LatticeWindow& window, const AnnulusRegion& region,
                             bool keep_thread) {
    EdgeSet x = EdgeSet::full(window);
    for (const EdgeId& e : removed_edge_set(window, region)) x.reset(e);
    if (!keep_thread) {
        // also cut the horizontal thread inside the ring
        for (int cx = region.center.x - region.outer_halfwidth;
             cx < region.center.x + region.outer_halfwidth; ++cx) {
            const EdgeId e{{cx, region.center.y}, EdgeDir::east};
            if (!window.contains(e)) continue;
            if (region.contains(e.origin) && region.contains(LatticeWindow::far_end(e)))
                x.reset(e);
        }
    }
    return x;
}

// BFS from the center restricted to Lambda(center, outer + 1): reaching the
// layer just outside the outer box is equivalent to reaching the outer sea.
bool bridged(const EdgeSet& y, const AnnulusRegion& region) {
    const LatticeWindow& window = y.window();
    const int limit = region.outer_halfwidth + 1;
    std::vector<std::uint8_t> visited(window.vertex_count(), 0);
    std::vector<int> queue{window.vertex_index(region.center)};
    visited[queue[0]] = 1;
    std::size_t head = 0;
    while (head < queue.size()) {
        const VertexId v = window.vertex_at(queue[head++]);
        const VertexId next[4] = {{v.x + 1, v.y}, {v.x - 1, v.y}, {v.x, v.y + 1}, {v.x, v.y - 1}};
        const EdgeId via[4] = {{{v.x, v.y}, EdgeDir::east},
                               {{v.x - 1, v.y}, EdgeDir::east},
                               {{v.x, v.y}, EdgeDir::north},
                               {{v.x, v.y - 1}, EdgeDir::north}};
        for (int d = 0; d < 4; ++d) {
            if (!window.contains(next[d])) continue;
            if (linf_distance(next[d], region.center) > limit) continue;
            if (!y.test(window.edge_index(via[d]))) continue;
            const int u = window.vertex_index(next[d]);
            if (visited[u]) continue;
            if (linf_distance(next[d], region.center) == limit) return true;
            visited[u] = 1;
            queue.push_back(u);
        }
    }
    return false;
}

}  // namespace

BridgingEstimate bridging_probability(const LatticeWindow& window, int scale, double epsilon,
                                      int replicates, std::uint64_t seed, int threads) {
    if (replicates < 1) throw std::domain_error("replicates must be positive");
    const VertexId center{window.width() / 2, window.height() / 2};
    const AnnulusRegion region = make_annulus_ring(center, scale);
    const int margin = region.outer_halfwidth + 1;
    if (center.x - margin < 0 || center.x + margin >= window.width() ||
        center.y - margin < 0 || center.y + margin >= window.height())
        throw std::domain_error("window too small for an interior annulus of this scale");

    const EdgeSet carved_removed = carve_single_annulus(window, region, false);
    const EdgeSet carved_intact = carve_single_annulus(window, region, true);

    std::vector<double> removed(replicates), intact(replicates);
    for_each_replicate(replicates, threads, [&](int r) {
        BernoulliParams params;
        params.epsilon = epsilon;
        params.seed = seed;
        params.stream_id = static_cast<std::uint64_t>(r);
        removed[r] = bridged(add_bernoulli(carved_removed, params), region) ? 1.0 : 0.0;
        intact[r] = bridged(add_bernoulli(carved_intact, params), region) ? 1.0 : 0.0;
    });

    BridgingEstimate out;
    const MeanStderr rm = mean_stderr(removed);
    const MeanStderr im = mean_stderr(intact);
    out.removed_estimate = rm.mean;
    out.removed_stderr = rm.stderr_;
    out.intact_estimate = im.mean;
    out.intact_stderr = im.stderr_;
    return out;
}

}  // namespace perc
