// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Meant to run via ctest or directly; finishes in a few minutes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "acceptance_fixtures.hpp"
#include "perc/counterexample.hpp"
#include "perc/duality.hpp"
#include "perc/experiments.hpp"
#include "perc/generators.hpp"
#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "test_oracles.hpp"

using namespace perc;
namespace fix = perc::acceptance;

namespace {

int failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& detail) {
        if (!ok && why_.empty()) why_ = detail;
        ok_ = ok_ && ok;
    }

    ~Criterion() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("[%s] %2d. %s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", number_, title_.c_str(),
                    seconds, why_.empty() ? "" : " -- ", why_.c_str());
        std::fflush(stdout);
        if (!ok_) ++failures;
    }

  private:
    int number_;
    std::string title_;
    bool ok_ = true;
    std::string why_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

EdgeSet random_configuration(const LatticeWindow& w, double p, std::uint64_t seed) {
    BernoulliParams params;
    params.epsilon = p;
    params.seed = seed;
    return add_bernoulli(EdgeSet(w), params);
}

void criterion_dual_forest() {
    Criterion c(1, "everywhere-percolating generators have forest duals");
    const LatticeWindow w(fix::kForestWindow, fix::kForestWindow);
    int cyclic = 0, total = 0;
    for (GeneratorKind kind :
         {GeneratorKind::foliation_horizontal, GeneratorKind::foliation_vertical,
          GeneratorKind::spanning_tree, GeneratorKind::comb}) {
        for (int seed = 0; seed < fix::kForestSeeds; ++seed) {
            ++total;
            if (has_dual_cycle(to_dual(generate({kind, 1, static_cast<std::uint64_t>(seed)}, w))))
                ++cyclic;
        }
    }
    c.expect(cyclic == 0, std::to_string(cyclic) + "/" + std::to_string(total) + " cyclic");
}

void criterion_pairwise_bound() {
    Criterion c(2, "dual pair connectivity obeys (1-eps)^k within 3 SE");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::dual_pairwise;
    cfg.generator.kind = GeneratorKind::foliation_horizontal;
    cfg.width = cfg.height = fix::kPairWindow;
    cfg.epsilon = fix::kPairEpsilon;
    cfg.scales = {1, 2, 3, 4, 5, 6, 7, 8};
    cfg.replicates = fix::kPairReplicates;
    cfg.seed = fix::kPairSeed;
    cfg.threads = fix::kThreads;
    for (const ResultRecord& rec : estimate_dual_pairwise(cfg))
        c.expect(rec.estimate <= *rec.bound + 3.0 * rec.stderr_,
                 "k=" + fmt(rec.param_value) + ": " + fmt(rec.estimate) + " > " +
                     fmt(*rec.bound) + " + 3*" + fmt(rec.stderr_));
}

void criterion_cluster_size_bound() {
    Criterion c(3, "mean dual cluster size under the series bound");
    const double eps = fix::kClusterEpsilon;
    double series = 1.0;
    double term = 1.0;
    for (int k = 1; term > 1e-13; ++k) {
        term = 4.0 * k * std::pow(1.0 - eps, k);
        series += term;
    }
    const double closed_form = 1.0 + 4.0 * (1.0 - eps) / (eps * eps);
    c.expect(std::abs(series - closed_form) < 1e-9,
             "series " + fmt(series) + " vs closed form " + fmt(closed_form));

    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::dual_cluster_size;
    cfg.generator.kind = GeneratorKind::foliation_horizontal;
    cfg.width = cfg.height = fix::kClusterWindow;
    cfg.epsilon = eps;
    cfg.replicates = fix::kClusterReplicates;
    cfg.seed = fix::kClusterSeed;
    cfg.threads = fix::kThreads;
    const ResultRecord rec = estimate_dual_cluster_size(cfg)[0];
    c.expect(rec.estimate <= closed_form + 3.0 * rec.stderr_,
             "mean " + fmt(rec.estimate) + " > " + fmt(closed_form) + " + 3*" +
                 fmt(rec.stderr_));
}

void criterion_decay() {
    Criterion c(4, "disconnection probability decays in the box size");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::ek_decay;
    cfg.generator.kind = GeneratorKind::foliation_horizontal;
    cfg.width = cfg.height = fix::kDecayWindow;
    cfg.epsilon = fix::kDecayEpsilon;
    cfg.scales = {4, 8, 16, 32};
    cfg.replicates = fix::kDecayReplicates;
    cfg.seed = fix::kDecaySeed;
    cfg.threads = fix::kThreads;
    const DecayFit fit = estimate_ek_decay(cfg);
    c.expect(fit.used_points >= 2, "fewer than two positive estimates");
    c.expect(fit.slope < 0.0, "slope " + fmt(fit.slope));
    for (std::size_t i = 1; i < fit.points.size(); ++i)
        c.expect(fit.points[i].second <= fit.points[i - 1].second,
                 "estimate rose from k=" + std::to_string(fit.points[i - 1].first));
    const double at8 = fit.points[1].second;
    const double at32 = fit.points[3].second;
    c.expect(at8 > 0.0 && at32 < at8 / fix::kDecayTailRatio,
             "P(E_32)=" + fmt(at32) + " vs P(E_8)/4=" + fmt(at8 / fix::kDecayTailRatio));
}

void criterion_boundary_walk() {
    Criterion c(5, "boundary-walk paths are valid and contained");
    const LatticeWindow w(fix::kWalkWindow, fix::kWalkWindow);
    std::mt19937_64 rng(fix::kWalkSeed);
    std::uniform_int_distribution<int> coord(2, fix::kWalkWindow - 4);
    int accepted = 0, valid = 0, contained = 0;
    while (accepted < fix::kWalkInstances) {
        // the lemma's setting: an everywhere-percolating base plus noise
        const EdgeSet x_base = generate({GeneratorKind::spanning_tree, 1, rng()}, w);
        BernoulliParams noise;
        noise.epsilon = fix::kWalkDensity;
        noise.seed = rng();
        const EdgeSet y = add_bernoulli(x_base, noise);
        const VertexId x{coord(rng), coord(rng)};
        const bool east = rng() & 1;
        const VertexId partner = east ? VertexId{x.x + 1, x.y} : VertexId{x.x, x.y + 1};
        const EdgeId between{x, east ? EdgeDir::east : EdgeDir::north};
        if (y.test(between)) continue;

        const DualEdgeSet dual = to_dual(y);
        const std::vector<int> labels = perc::test::bfs_dual_labels(dual);
        const auto [face, dir] = DualEdgeSet::dual_of_primal(w, between);
        const int component = labels[dual.vertex_index(face)];
        bool interior = true;
        std::vector<DualVertexId> members;
        for (int v = 0; v < dual.dual_vertex_count(); ++v) {
            if (labels[v] != component) continue;
            const DualVertexId f = dual.vertex_at(v);
            members.push_back(f);
            if (f.i == 0 || f.i == dual.dual_width() - 1 || f.j == 0 ||
                f.j == dual.dual_height() - 1)
                interior = false;
        }
        if (!interior) continue;
        auto anchored = [&](VertexId v) {
            const VertexId around[4] = {{v.x + 1, v.y}, {v.x - 1, v.y},
                                        {v.x, v.y + 1}, {v.x, v.y - 1}};
            for (const VertexId& u : around) {
                if (!w.contains(u)) continue;
                VertexId a = v, b = u;
                if (a.x > b.x || a.y > b.y) std::swap(a, b);
                if (y.test(EdgeId{a, a.y == b.y ? EdgeDir::east : EdgeDir::north})) return true;
            }
            return false;
        };
        if (!anchored(x) || !anchored(partner)) continue;

        ++accepted;
        bool this_valid = false, this_contained = false;
        try {
            const auto path = boundary_walk_path(y, x, partner);
            this_valid = path.size() >= 2 && path.front() == x && path.back() == partner;
            for (std::size_t i = 0; this_valid && i + 1 < path.size(); ++i) {
                VertexId u = path[i], v = path[i + 1];
                if (u.x > v.x || u.y > v.y) std::swap(u, v);
                if (!y.test(EdgeId{u, u.y == v.y ? EdgeDir::east : EdgeDir::north}))
                    this_valid = false;
            }
            int m = 0;
            for (const DualVertexId& f : members)
                while (!dual_vertex_in_box(f, x, m)) ++m;
            const BoxRegion box = box_region(w, x, m + 1);
            this_contained = true;
            for (const VertexId& v : path)
                if (!box.contains(v)) this_contained = false;
        } catch (const UnclosableWalkError&) {
        }
        valid += this_valid;
        contained += this_contained;
    }
    c.expect(valid == fix::kWalkInstances,
             std::to_string(valid) + "/" + std::to_string(fix::kWalkInstances) + " valid");
    c.expect(contained == fix::kWalkInstances,
             std::to_string(contained) + "/" + std::to_string(fix::kWalkInstances) +
                 " contained");
}

void criterion_marginals() {
    Criterion c(6, "coarse edge marginals rise toward one");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::marginal_an;
    cfg.generator.kind = GeneratorKind::foliation_horizontal;
    cfg.width = cfg.height = fix::kMarginalWindow;
    cfg.epsilon = fix::kMarginalEpsilon;
    cfg.scales = {4, 8, 16, 32};
    cfg.replicates = fix::kMarginalReplicates;
    cfg.seed = fix::kMarginalSeed;
    cfg.threads = fix::kThreads;
    const auto records = estimate_marginal_an(cfg);
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double slack =
            3.0 * std::sqrt(records[i].stderr_ * records[i].stderr_ +
                            records[i - 1].stderr_ * records[i - 1].stderr_);
        c.expect(records[i].estimate + slack >= records[i - 1].estimate,
                 "drop at n=" + fmt(records[i].param_value));
    }
    c.expect(records.back().estimate >= fix::kMarginalFloor,
             "P(A_32)=" + fmt(records.back().estimate));
}

void criterion_one_dependence() {
    Criterion c(7, "endpoint-disjoint coarse edges are uncorrelated");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::one_dependence;
    cfg.generator.kind = GeneratorKind::foliation_horizontal;
    cfg.width = cfg.height = fix::kCovWindow;
    cfg.epsilon = fix::kCovEpsilon;
    cfg.scales = {fix::kCovScale};
    cfg.replicates = fix::kCovReplicates;
    cfg.seed = fix::kCovSeed;
    cfg.threads = fix::kThreads;
    const OneDependenceReport report = check_one_dependence(cfg);
    c.expect(static_cast<int>(report.pairs.size()) >= fix::kCovMinPairs,
             "only " + std::to_string(report.pairs.size()) + " pairs");
    int index = 0;
    for (const EdgePairCovariance& pair : report.pairs) {
        c.expect(pair.vertex_disjoint, "pair " + std::to_string(index) + " shares an endpoint");
        c.expect(std::abs(pair.covariance) <= fix::kCovSigmas * pair.stderr_,
                 "pair " + std::to_string(index) + ": cov " + fmt(pair.covariance) + " vs " +
                     fmt(fix::kCovSigmas * pair.stderr_));
        ++index;
    }
}

void criterion_connectivity() {
    Criterion c(8, "central sub-window sits in one cluster");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::connectivity;
    cfg.generator.kind = GeneratorKind::spanning_tree;
    cfg.generator.seed = fix::kConnSeed;
    cfg.width = cfg.height = fix::kConnWindow;
    cfg.epsilon = fix::kConnEpsilon;
    cfg.replicates = fix::kConnReplicates;
    cfg.seed = fix::kConnSeed;
    cfg.threads = fix::kThreads;
    const ResultRecord rec = run_connectivity(cfg)[0];
    c.expect(rec.estimate >= fix::kConnFloor, "fraction " + fmt(rec.estimate));
}

void criterion_thinning() {
    Criterion c(9, "thinned configuration still crosses");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::pc_thinning;
    cfg.generator.kind = GeneratorKind::spanning_tree;
    cfg.generator.seed = fix::kThinSeed;
    cfg.width = cfg.height = fix::kThinWindow;
    cfg.epsilon = fix::kThinEpsilon;
    cfg.q_grid = {0.9, 0.95, fix::kThinTargetQ, 0.999};
    cfg.replicates = fix::kThinReplicates;
    cfg.seed = fix::kThinSeed;
    cfg.threads = fix::kThreads;
    const auto records = run_pc_thinning(cfg);
    for (std::size_t i = 1; i < records.size(); ++i)
        c.expect(records[i].estimate >= records[i - 1].estimate,
                 "crossing fell between q=" + fmt(records[i - 1].param_value) + " and q=" +
                     fmt(records[i].param_value));
    for (const ResultRecord& rec : records)
        if (rec.param_value == fix::kThinTargetQ)
            c.expect(rec.estimate >= fix::kThinFloor,
                     "crossing " + fmt(rec.estimate) + " at q=" + fmt(rec.param_value));
}

void criterion_halfplane() {
    Criterion c(10, "half-plane window crossing");
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::halfplane;
    cfg.generator.kind = GeneratorKind::foliation_vertical;
    cfg.width = fix::kHalfWidth;
    cfg.height = fix::kHalfHeight;
    cfg.boundary_mode = BoundaryMode::half_plane;
    cfg.epsilon = fix::kHalfEpsilon;
    cfg.replicates = fix::kHalfReplicates;
    cfg.seed = fix::kHalfSeed;
    cfg.threads = fix::kThreads;
    const ResultRecord rec = run_halfplane(cfg)[0];
    c.expect(rec.estimate >= fix::kHalfFloor, "fraction " + fmt(rec.estimate));
}

void criterion_bridging() {
    Criterion c(11, "annulus bridging fades with scale; the carved field percolates");
    const LatticeWindow w(fix::kBridgeWindow, fix::kBridgeWindow);
    std::vector<BridgingEstimate> estimates;
    for (int n : {3, 4, 5, 6})
        estimates.push_back(bridging_probability(w, n, fix::kBridgeEpsilon,
                                                 fix::kBridgeReplicates, fix::kBridgeSeed,
                                                 fix::kThreads));
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        const double gap = estimates[i - 1].removed_estimate - estimates[i].removed_estimate;
        const double se = std::sqrt(estimates[i - 1].removed_stderr * estimates[i - 1].removed_stderr +
                                    estimates[i].removed_stderr * estimates[i].removed_stderr);
        c.expect(gap > fix::kBridgeSigmas * se,
                 "step " + std::to_string(i + 2) + "->" + std::to_string(i + 3) + ": gap " +
                     fmt(gap) + " vs " + fmt(fix::kBridgeSigmas * se));
    }
    c.expect(estimates.back().removed_estimate < fix::kBridgeCeiling,
             "P(bridge, n=6) = " + fmt(estimates.back().removed_estimate));

    const BridgingEstimate silent =
        bridging_probability(w, 4, 0.0, 200, fix::kBridgeSeed, fix::kThreads);
    c.expect(silent.removed_estimate == 0.0,
             "noiseless bridging " + fmt(silent.removed_estimate));

    CounterexampleConfig field;
    field.window = LatticeWindow(fix::kFieldWindow, fix::kFieldWindow);
    field.n_max = fix::kFieldNMax;
    int percolating = 0;
    for (int seed = 0; seed < fix::kFieldSeeds; ++seed) {
        field.seed = seed;
        percolating += is_everywhere_percolating(build_X(field));
    }
    c.expect(percolating == fix::kFieldSeeds,
             std::to_string(percolating) + "/" + std::to_string(fix::kFieldSeeds) +
                 " instances percolate");
}

void criterion_oracle() {
    Criterion c(12, "union-find labels equal BFS labels");
    const LatticeWindow w(fix::kOracleWindow, fix::kOracleWindow);
    int agreeing = 0;
    for (int seed = 0; seed < fix::kOracleInstances; ++seed) {
        const double p = 0.15 + 0.7 * (seed % 97) / 97.0;
        const EdgeSet y = random_configuration(w, p, 4000 + seed);
        const ClusterLabeling mine = clusters(y);
        std::vector<int> labels(mine.label.begin(), mine.label.end());
        agreeing += perc::test::same_partition(labels, perc::test::bfs_labels(y));
    }
    c.expect(agreeing == fix::kOracleInstances,
             std::to_string(agreeing) + "/" + std::to_string(fix::kOracleInstances));
}

void criterion_determinism() {
    Criterion c(13, "byte-identical CSVs at 1, 4 and 8 workers");
    auto run_at = [](int threads) {
        std::string combined;
        {
            ExperimentConfig cfg;
            cfg.experiment = ExperimentKind::ek_decay;
            cfg.generator.kind = GeneratorKind::foliation_horizontal;
            cfg.width = cfg.height = 48;
            cfg.epsilon = 0.3;
            cfg.scales = {4, 8, 16};
            cfg.replicates = 2000;
            cfg.seed = fix::kDeterminismSeed;
            cfg.threads = threads;
            std::vector<ResultRecord> records;
            estimate_ek_decay(cfg, &records);
            combined += results_to_csv(records);
        }
        {
            ExperimentConfig cfg;
            cfg.experiment = ExperimentKind::pc_thinning;
            cfg.generator.kind = GeneratorKind::spanning_tree;
            cfg.generator.seed = fix::kDeterminismSeed;
            cfg.width = cfg.height = 96;
            cfg.epsilon = 0.25;
            cfg.q_grid = {0.9, 0.98};
            cfg.replicates = 400;
            cfg.seed = fix::kDeterminismSeed;
            cfg.threads = threads;
            combined += results_to_csv(run_pc_thinning(cfg));
        }
        {
            ExperimentConfig cfg;
            cfg.experiment = ExperimentKind::counterexample;
            cfg.width = cfg.height = 48;
            cfg.epsilon = 0.3;
            cfg.scales = {3, 4};
            cfg.replicates = 500;
            cfg.seed = fix::kDeterminismSeed;
            cfg.threads = threads;
            combined += results_to_csv(run_counterexample(cfg));
        }
        return combined;
    };
    const std::string one = run_at(1);
    const std::string four = run_at(4);
    const std::string eight = run_at(8);
    c.expect(one == four, "1 vs 4 workers differ");
    c.expect(one == eight, "1 vs 8 workers differ");
}

}  // namespace

int main() {
    criterion_dual_forest();
    criterion_pairwise_bound();
    criterion_cluster_size_bound();
    criterion_decay();
    criterion_boundary_walk();
    criterion_marginals();
    criterion_one_dependence();
    criterion_connectivity();
    criterion_thinning();
    criterion_halfplane();
    criterion_bridging();
    criterion_oracle();
    criterion_determinism();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
