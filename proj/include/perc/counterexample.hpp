#pragma once

#include <cstdint>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

struct AnnulusActivation {
    VertexId center;
    int scale = 1;  // n
    bool a_flag = false;
    bool b_flag = false;
};

// Square ring around `center`: inner_halfwidth < |v - center|_inf <=
// outer_halfwidth. outer_halfwidth = 2^(n-1); the radial thickness is
// ceil(2^((n+1)/2)) layers (clamped so the inner box never vanishes for
// n >= 2; at n = 1 the inner box degenerates to the center vertex alone).
struct AnnulusRegion {
    VertexId center;
    int scale = 1;
    int outer_halfwidth = 1;
    int inner_halfwidth = 0;

    bool contains(VertexId v) const {
        const int d = linf_distance(v, center);
        return d > inner_halfwidth && d <= outer_halfwidth;
    }
};

int annulus_outer_halfwidth(int scale);
int annulus_thickness(int scale);  // ceil(2^(n/2))

// Public contract requires n >= 2 (throws std::domain_error below that);
// make_annulus_ring admits n = 1 for the random-field construction, which
// samples scales starting at 1.
AnnulusRegion annulus_region(VertexId center, int scale);
AnnulusRegion make_annulus_ring(VertexId center, int scale);

// Exact intersection test on the unclipped ring geometry.
bool annuli_overlap(const AnnulusRegion& a, const AnnulusRegion& b);

struct CounterexampleConfig {
    LatticeWindow window{64, 64};
    int n_max = 2;
    double epsilon = 0.3;
    std::uint64_t seed = 1;
    int replicates = 1000;
};

// All (x, n) with a(x, n) = 1: each center in the window and 1 <= n <= n_max
// included independently with probability 4^-n. Sorted by (n, y, x);
// deterministic given the seed. Scales whose outer box exceeds the window are
// never sampled.
std::vector<AnnulusActivation> sample_activations(const CounterexampleConfig& config);

// b(x, n) = 1 iff no other activation (y, k) with k <= n overlaps W(x, n).
std::vector<AnnulusActivation> resolve_b_flags(std::vector<AnnulusActivation> activations);

// W'(x, n): edges with both endpoints in the ring, except those on the
// horizontal line through the center.
std::vector<EdgeId> removed_edge_set(const LatticeWindow& window, const AnnulusRegion& region);

// Full configuration minus the union of W'(x, n) over activations with
// a = b = 1.
EdgeSet build_X(const CounterexampleConfig& config);

struct BridgingEstimate {
    double removed_estimate = 0.0;  // thread carved away with the rest
    double removed_stderr = 0.0;
    double intact_estimate = 0.0;  // thread left in place
    double intact_stderr = 0.0;
};

// Monte Carlo probability that, after carving one interior annulus of scale n
// and adding epsilon-Bernoulli edges, the inner box connects to the region
// outside the outer box.
BridgingEstimate bridging_probability(const LatticeWindow& window, int scale, double epsilon,
                                      int replicates, std::uint64_t seed, int threads = 1);

}  // namespace perc
