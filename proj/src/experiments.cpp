#include "perc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "perc/counterexample.hpp"
#include "perc/duality.hpp"
#include "perc/rng.hpp"
#include "perc/runner.hpp"

namespace perc {

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::dual_pairwise: return "dual-pairwise";
        case ExperimentKind::dual_cluster_size: return "dual-cluster-size";
        case ExperimentKind::ek_decay: return "ek-decay";
        case ExperimentKind::marginal_an: return "marginal-an";
        case ExperimentKind::one_dependence: return "one-dependence";
        case ExperimentKind::halfplane: return "halfplane";
        case ExperimentKind::pc_thinning: return "pc-thinning";
        case ExperimentKind::connectivity: return "connectivity";
        case ExperimentKind::counterexample: return "counterexample";
    }
    return "unknown";
}

namespace {

LatticeWindow config_window(const ExperimentConfig& cfg) {
    return LatticeWindow(cfg.width, cfg.height, cfg.boundary_mode);
}

EdgeSet base_configuration(const ExperimentConfig& cfg, const LatticeWindow& window) {
    if (cfg.x_override) {
        if (cfg.x_override->window().width() != window.width() ||
            cfg.x_override->window().height() != window.height())
            throw std::domain_error("supplied configuration does not match the window");
        return *cfg.x_override;
    }
    return generate(cfg.generator, window);
}

std::string base_name(const ExperimentConfig& cfg) {
    return cfg.x_override ? "x-file" : generator_name(cfg.generator.kind);
}

EdgeDir pair_direction(const ExperimentConfig& cfg) {
    switch (cfg.orientation) {
        case PairOrientation::horizontal: return EdgeDir::east;
        case PairOrientation::vertical: return EdgeDir::north;
        case PairOrientation::automatic: break;
    }
    if (!cfg.x_override && cfg.generator.kind == GeneratorKind::foliation_vertical)
        return EdgeDir::east;
    return EdgeDir::north;
}

ResultRecord make_record(const ExperimentConfig& cfg, std::string experiment,
                         std::string param_name, double param_value, MeanStderr ms,
                         std::optional<double> bound = std::nullopt) {
    ResultRecord rec;
    rec.experiment = std::move(experiment);
    rec.generator = base_name(cfg);
    rec.epsilon = cfg.epsilon;
    rec.param_name = std::move(param_name);
    rec.param_value = param_value;
    rec.estimate = ms.mean;
    rec.stderr_ = ms.stderr_;
    rec.bound = bound;
    rec.replicates = cfg.replicates;
    rec.seed = cfg.seed;
    return rec;
}

BernoulliParams noise_params(const ExperimentConfig& cfg, int replicate) {
    BernoulliParams params;
    params.epsilon = cfg.epsilon;
    params.seed = cfg.seed;
    params.stream_id = static_cast<std::uint64_t>(replicate);
    return params;
}

// Breadth-first search over the dual component of `start`, with dual edge
// presence read off the primal configuration on the fly.
class DualComponentScan {
  public:
    void ensure(const LatticeWindow& window) {
        if (width_ == window.width() && height_ == window.height()) return;
        width_ = window.width();
        height_ = window.height();
        horizontal_ = window.horizontal_edge_count();
        stamp_.assign(static_cast<std::size_t>(width_ - 1) * (height_ - 1), 0);
        generation_ = 0;
    }

    // visits every dual vertex of the component, returns its size
    template <class Visit>
    int run(const EdgeSet& y, DualVertexId start, Visit visit) {
        ensure(y.window());
        ++generation_;
        const int dw = width_ - 1;
        const int dh = height_ - 1;
        queue_.clear();
        queue_.push_back(start.j * dw + start.i);
        stamp_[queue_[0]] = generation_;
        visit(start);
        std::size_t head = 0;
        while (head < queue_.size()) {
            const int v = queue_[head++];
            const int i = v % dw;
            const int j = v / dw;
            // dual east (i,j)-(i+1,j) crosses primal north (i+1, j);
            // dual north (i,j)-(i,j+1) crosses primal east (i, j+1)
            const bool open[4] = {
                i + 1 < dw && !y.test(horizontal_ + j * width_ + (i + 1)),
                i > 0 && !y.test(horizontal_ + j * width_ + i),
                j + 1 < dh && !y.test((j + 1) * (width_ - 1) + i),
                j > 0 && !y.test(j * (width_ - 1) + i),
            };
            const int next[4] = {v + 1, v - 1, v + dw, v - dw};
            for (int d = 0; d < 4; ++d) {
                if (!open[d]) continue;
                const int u = next[d];
                if (stamp_[u] == generation_) continue;
                stamp_[u] = generation_;
                visit(DualVertexId{u % dw, u / dw});
                queue_.push_back(u);
            }
        }
        return static_cast<int>(queue_.size());
    }

  private:
    int width_ = 0;
    int height_ = 0;
    int horizontal_ = 0;
    std::vector<std::uint32_t> stamp_;
    std::vector<int> queue_;
    std::uint32_t generation_ = 0;
};

double pair_bound(double epsilon, int distance) {
    return std::pow(1.0 - epsilon, distance);
}

}  // namespace

std::vector<ResultRecord> estimate_dual_pairwise(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    if (cfg.scales.empty()) throw std::domain_error("dual-pairwise needs a distance list");
    const int max_k = *std::max_element(cfg.scales.begin(), cfg.scales.end());
    const int dw = window.width() - 1;
    const int dh = window.height() - 1;
    const DualVertexId origin{(dw - 1 - max_k) / 2, dh / 2};
    if (origin.i < 0 || origin.i + max_k > dw - 1)
        throw std::domain_error("dual-pairwise: distance exceeds the window");

    const int slots = static_cast<int>(cfg.scales.size());
    std::vector<double> values(static_cast<std::size_t>(cfg.replicates) * slots);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        thread_local DualComponentScan scan;
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        thread_local std::vector<std::uint8_t> reached;
        reached.assign(max_k + 1, 0);
        scan.run(y, origin, [&](DualVertexId v) {
            if (v.j == origin.j && v.i >= origin.i && v.i - origin.i <= max_k)
                reached[v.i - origin.i] = 1;
        });
        for (int s = 0; s < slots; ++s)
            values[static_cast<std::size_t>(r) * slots + s] = reached[cfg.scales[s]] ? 1.0 : 0.0;
    });

    std::vector<ResultRecord> records;
    for (int s = 0; s < slots; ++s) {
        std::vector<double> column(cfg.replicates);
        for (int r = 0; r < cfg.replicates; ++r)
            column[r] = values[static_cast<std::size_t>(r) * slots + s];
        records.push_back(make_record(cfg, "dual-pairwise", "distance", cfg.scales[s],
                                      mean_stderr(column),
                                      pair_bound(cfg.epsilon, cfg.scales[s])));
    }
    return records;
}

std::vector<ResultRecord> estimate_dual_cluster_size(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    const int dw = window.width() - 1;
    const int dh = window.height() - 1;
    const DualVertexId origin{dw / 2, dh / 2};
    const int margin = std::min(std::min(origin.i, dw - 1 - origin.i),
                                std::min(origin.j, dh - 1 - origin.j));
    if (margin < 16)
        throw std::domain_error("dual-cluster-size: vertex closer than 16 steps to the frame");

    std::vector<double> sizes(cfg.replicates);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        thread_local DualComponentScan scan;
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        sizes[r] = scan.run(y, origin, [](DualVertexId) {});
    });

    const double eps = cfg.epsilon;
    const double bound = 1.0 + 4.0 * (1.0 - eps) / (eps * eps);
    return {make_record(cfg, "dual-cluster-size", "epsilon", eps, mean_stderr(sizes), bound)};
}

namespace {

DecayFit fit_log_decay(const std::vector<int>& scales, const std::vector<MeanStderr>& stats) {
    DecayFit fit;
    std::vector<double> ks, logs;
    for (std::size_t s = 0; s < scales.size(); ++s) {
        fit.points.emplace_back(scales[s], stats[s].mean);
        if (stats[s].mean > 0.0) {
            ks.push_back(scales[s]);
            logs.push_back(std::log(stats[s].mean));
        } else {
            fit.excluded.push_back(scales[s]);
        }
    }
    const int m = static_cast<int>(ks.size());
    fit.used_points = m;
    if (m < 2) return fit;

    double mean_k = 0.0, mean_l = 0.0;
    for (int i = 0; i < m; ++i) {
        mean_k += ks[i];
        mean_l += logs[i];
    }
    mean_k /= m;
    mean_l /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < m; ++i) {
        sxx += (ks[i] - mean_k) * (ks[i] - mean_k);
        sxy += (ks[i] - mean_k) * (logs[i] - mean_l);
        syy += (logs[i] - mean_l) * (logs[i] - mean_l);
    }
    fit.slope = sxy / sxx;
    fit.intercept = mean_l - fit.slope * mean_k;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    if (m > 2) {
        double rss = 0.0;
        for (int i = 0; i < m; ++i) {
            const double resid = logs[i] - (fit.intercept + fit.slope * ks[i]);
            rss += resid * resid;
        }
        fit.slope_stderr = std::sqrt(rss / (m - 2) / sxx);
    }
    return fit;
}

}  // namespace

DecayFit estimate_ek_decay(const ExperimentConfig& cfg, std::vector<ResultRecord>* records) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    if (cfg.scales.empty()) throw std::domain_error("ek-decay needs a scale list");
    const VertexId a{window.width() / 2, window.height() / 2};
    const VertexId b = pair_direction(cfg) == EdgeDir::north ? VertexId{a.x, a.y + 1}
                                                             : VertexId{a.x + 1, a.y};
    std::vector<BoxRegion> boxes;
    for (int k : cfg.scales) {
        if (k < 2) throw std::domain_error("ek-decay: scales must be at least 2");
        BoxRegion box = box_region(window, a, k);
        if (box.clipped) throw std::domain_error("ek-decay: scale does not fit in the window");
        boxes.push_back(box);
    }

    const int slots = static_cast<int>(cfg.scales.size());
    std::vector<double> values(static_cast<std::size_t>(cfg.replicates) * slots);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        for (int s = 0; s < slots; ++s)
            values[static_cast<std::size_t>(r) * slots + s] =
                local_connected(y, a, b, boxes[s]) ? 0.0 : 1.0;
    });

    std::vector<MeanStderr> stats(slots);
    for (int s = 0; s < slots; ++s) {
        std::vector<double> column(cfg.replicates);
        for (int r = 0; r < cfg.replicates; ++r)
            column[r] = values[static_cast<std::size_t>(r) * slots + s];
        stats[s] = mean_stderr(column);
    }
    DecayFit fit = fit_log_decay(cfg.scales, stats);

    if (records) {
        for (int s = 0; s < slots; ++s)
            records->push_back(make_record(cfg, "ek-decay", "k", cfg.scales[s], stats[s]));
        MeanStderr slope_stat;
        slope_stat.mean = fit.slope;
        slope_stat.stderr_ = fit.slope_stderr;
        records->push_back(make_record(cfg, "ek-decay", "decay_slope", 0.0, slope_stat));
    }
    return fit;
}

namespace {

// deterministic placement of the measured coarse pair for one scale
std::pair<VertexId, VertexId> coarse_pair_for_scale(const LatticeWindow& window, int n,
                                                    EdgeDir dir) {
    const int ci = std::max(1, window.width() / (2 * n));
    const int cj = std::max(1, window.height() / (2 * n));
    VertexId a{ci, cj};
    VertexId b = dir == EdgeDir::north ? VertexId{ci, cj + 1} : VertexId{ci + 1, cj};
    if (!coarse_vertex_valid(window, a, n) || !coarse_vertex_valid(window, b, n))
        throw std::domain_error("marginal-an: scale does not fit in the window");
    return {a, b};
}

}  // namespace

std::vector<ResultRecord> estimate_marginal_an(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    if (cfg.scales.empty()) throw std::domain_error("marginal-an needs a scale list");
    const EdgeDir dir = pair_direction(cfg);

    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int n : cfg.scales) {
        if (n < 2) throw std::domain_error("marginal-an: scales must be at least 2");
        pairs.push_back(coarse_pair_for_scale(window, n, dir));
    }

    const int slots = static_cast<int>(cfg.scales.size());
    std::vector<double> values(static_cast<std::size_t>(cfg.replicates) * slots);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        for (int s = 0; s < slots; ++s)
            values[static_cast<std::size_t>(r) * slots + s] =
                closely_connected(y, pairs[s].first, pairs[s].second, cfg.scales[s]) ? 1.0 : 0.0;
    });

    // informational lower bound 1 - n e^{-cn} with c fitted from a short
    // disconnection-decay run on an independent stream set
    std::optional<double> decay_c;
    {
        ExperimentConfig pilot = cfg;
        pilot.replicates = std::min(cfg.replicates, 2000);
        pilot.seed = mix64(cfg.seed ^ 0x616e2d70696c6f74ull);
        pilot.x_override = x;
        try {
            const DecayFit fit = estimate_ek_decay(pilot);
            if (fit.used_points >= 2 && fit.slope < 0.0) decay_c = -fit.slope;
        } catch (const std::domain_error&) {
            // window too small for the pilot boxes; leave the bound empty
        }
    }

    std::vector<ResultRecord> records;
    for (int s = 0; s < slots; ++s) {
        std::vector<double> column(cfg.replicates);
        for (int r = 0; r < cfg.replicates; ++r)
            column[r] = values[static_cast<std::size_t>(r) * slots + s];
        std::optional<double> bound;
        if (decay_c) {
            const double n = cfg.scales[s];
            bound = std::max(0.0, 1.0 - n * std::exp(-*decay_c * n));
        }
        records.push_back(
            make_record(cfg, "marginal-an", "n", cfg.scales[s], mean_stderr(column), bound));
    }
    return records;
}

namespace {

struct CoarseEdgeRef {
    VertexId origin;
    EdgeDir dir;

    VertexId other() const {
        return dir == EdgeDir::east ? VertexId{origin.x + 1, origin.y}
                                    : VertexId{origin.x, origin.y + 1};
    }
    friend bool operator==(const CoarseEdgeRef& a, const CoarseEdgeRef& b) {
        return a.origin == b.origin && a.dir == b.dir;
    }
};

bool share_endpoint(const CoarseEdgeRef& a, const CoarseEdgeRef& b) {
    const VertexId ends_a[2] = {a.origin, a.other()};
    const VertexId ends_b[2] = {b.origin, b.other()};
    for (const VertexId& u : ends_a)
        for (const VertexId& v : ends_b)
            if (u == v) return true;
    return false;
}

}  // namespace

OneDependenceReport check_one_dependence(const ExperimentConfig& cfg,
                                         std::vector<ResultRecord>* records) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    const int n = cfg.scales.empty() ? 8 : cfg.scales.front();
    if (n < 2) throw std::domain_error("one-dependence: scale must be at least 2");

    // contiguous range of coarse vertices whose boxes stay inside the window
    const int half = n / 2;
    const int i_lo = (half + n - 1) / n;
    const int j_lo = i_lo;
    const int i_hi = (window.width() - 1 - half) / n;
    const int j_hi = (window.height() - 1 - half) / n;
    if (i_hi - i_lo + 1 < 5 || j_hi - j_lo + 1 < 5)
        throw std::domain_error("one-dependence: usable coarse lattice smaller than 5x5");

    // >= 20 endpoint-disjoint pairs: collinear with a one-vertex gap, parallel
    // in adjacent rows/columns, perpendicular, and far-separated; all indices
    // stay inside [i_lo, i_hi] x [j_lo, j_hi] for any grid of width >= 5
    std::vector<std::pair<CoarseEdgeRef, CoarseEdgeRef>> pairs;
    const int im = (i_lo + i_hi) / 2;
    const int jm = (j_lo + j_hi) / 2;
    for (int j : {j_lo, jm, j_hi}) {
        pairs.push_back({{{i_lo, j}, EdgeDir::east}, {{i_lo + 2, j}, EdgeDir::east}});
        pairs.push_back({{{i_lo, j}, EdgeDir::east}, {{i_lo + 3, j}, EdgeDir::east}});
    }
    for (int j : {j_lo, jm}) {
        pairs.push_back({{{i_lo, j}, EdgeDir::east}, {{i_lo, j + 1}, EdgeDir::east}});
        pairs.push_back({{{im, j}, EdgeDir::east}, {{im, j + 1}, EdgeDir::east}});
    }
    for (int i : {i_lo, im}) {
        pairs.push_back({{{i, j_lo}, EdgeDir::north}, {{i + 1, j_lo}, EdgeDir::north}});
        pairs.push_back({{{i, jm}, EdgeDir::north}, {{i + 1, jm}, EdgeDir::north}});
    }
    for (int j : {j_lo, jm}) {
        pairs.push_back({{{i_lo, j}, EdgeDir::east}, {{i_lo + 2, j}, EdgeDir::north}});
        pairs.push_back({{{im, j}, EdgeDir::north}, {{im + 1, j}, EdgeDir::east}});
    }
    pairs.push_back({{{i_lo, j_lo}, EdgeDir::east}, {{i_hi - 1, j_hi}, EdgeDir::east}});
    pairs.push_back({{{i_lo, j_hi - 1}, EdgeDir::north}, {{i_hi, j_lo}, EdgeDir::north}});
    pairs.push_back({{{i_lo, jm}, EdgeDir::east}, {{i_hi - 1, jm}, EdgeDir::east}});
    pairs.push_back({{{im, j_lo}, EdgeDir::north}, {{im, j_hi - 1}, EdgeDir::north}});

    // unique edges involved
    std::vector<CoarseEdgeRef> edges;
    auto edge_slot = [&](const CoarseEdgeRef& e) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i] == e) return static_cast<int>(i);
        edges.push_back(e);
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<std::pair<int, int>> pair_slots;
    for (const auto& [a, b] : pairs) {
        for (const CoarseEdgeRef& e : {a, b}) {
            for (const VertexId& c : {e.origin, e.other()})
                if (!coarse_vertex_valid(window, c, n))
                    throw std::domain_error("one-dependence: selected pair leaves the window");
        }
        pair_slots.emplace_back(edge_slot(a), edge_slot(b));
    }

    const int slots = static_cast<int>(edges.size());
    std::vector<double> values(static_cast<std::size_t>(cfg.replicates) * slots);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        for (int s = 0; s < slots; ++s)
            values[static_cast<std::size_t>(r) * slots + s] =
                closely_connected(y, edges[s].origin, edges[s].other(), n) ? 1.0 : 0.0;
    });

    std::vector<double> marginals(slots, 0.0);
    for (int s = 0; s < slots; ++s) {
        double sum = 0.0;
        for (int r = 0; r < cfg.replicates; ++r)
            sum += values[static_cast<std::size_t>(r) * slots + s];
        marginals[s] = sum / cfg.replicates;
    }

    OneDependenceReport report;
    report.scale = n;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [sa, sb] = pair_slots[p];
        std::vector<double> cross(cfg.replicates);
        for (int r = 0; r < cfg.replicates; ++r) {
            const double u = values[static_cast<std::size_t>(r) * slots + sa] - marginals[sa];
            const double v = values[static_cast<std::size_t>(r) * slots + sb] - marginals[sb];
            cross[r] = u * v;
        }
        const MeanStderr cov = mean_stderr(cross);
        EdgePairCovariance out;
        out.first_origin = pairs[p].first.origin;
        out.first_dir = pairs[p].first.dir;
        out.second_origin = pairs[p].second.origin;
        out.second_dir = pairs[p].second.dir;
        out.vertex_disjoint = !share_endpoint(pairs[p].first, pairs[p].second);
        out.covariance = cov.mean;
        out.stderr_ = cov.stderr_;
        out.first_marginal = marginals[sa];
        out.second_marginal = marginals[sb];
        report.pairs.push_back(out);
        if (records)
            records->push_back(make_record(cfg, "one-dependence", "pair",
                                           static_cast<double>(p), cov));
    }
    return report;
}

std::vector<ResultRecord> run_halfplane(const ExperimentConfig& cfg) {
    if (cfg.boundary_mode != BoundaryMode::half_plane)
        throw std::domain_error("halfplane experiment requires the half-plane window");
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);

    std::vector<double> values(cfg.replicates);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        values[r] = has_left_right_crossing(add_bernoulli(x, noise_params(cfg, r))) ? 1.0 : 0.0;
    });
    return {make_record(cfg, "halfplane", "epsilon", cfg.epsilon, mean_stderr(values))};
}

std::vector<ResultRecord> run_pc_thinning(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    std::vector<double> grid = cfg.q_grid;
    if (grid.empty() && cfg.q) grid.push_back(*cfg.q);
    if (grid.empty()) throw std::domain_error("pc-thinning needs a q grid");
    for (double q : grid)
        if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("pc-thinning: q must be in (0, 1]");

    const int slots = static_cast<int>(grid.size());
    std::vector<double> values(static_cast<std::size_t>(cfg.replicates) * slots);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        for (int s = 0; s < slots; ++s) {
            BernoulliParams thin = noise_params(cfg, r);  // shared uniforms across q
            thin.q = grid[s];
            values[static_cast<std::size_t>(r) * slots + s] =
                has_left_right_crossing(thin_bernoulli(y, thin)) ? 1.0 : 0.0;
        }
    });

    std::vector<ResultRecord> records;
    for (int s = 0; s < slots; ++s) {
        std::vector<double> column(cfg.replicates);
        for (int r = 0; r < cfg.replicates; ++r)
            column[r] = values[static_cast<std::size_t>(r) * slots + s];
        records.push_back(make_record(cfg, "pc-thinning", "q", grid[s], mean_stderr(column)));
    }
    return records;
}

std::vector<ResultRecord> run_connectivity(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    const EdgeSet x = base_configuration(cfg, window);
    const int x0 = window.width() / 4;
    const int y0 = window.height() / 4;
    const int x1 = x0 + window.width() / 2 - 1;
    const int y1 = y0 + window.height() / 2 - 1;

    std::vector<double> values(cfg.replicates);
    for_each_replicate(cfg.replicates, cfg.threads, [&](int r) {
        const EdgeSet y = add_bernoulli(x, noise_params(cfg, r));
        const ClusterLabeling labeling = clusters(y);
        const std::int32_t want = labeling.label[window.vertex_index({x0, y0})];
        bool single = true;
        for (int vy = y0; vy <= y1 && single; ++vy)
            for (int vx = x0; vx <= x1; ++vx)
                if (labeling.label[window.vertex_index({vx, vy})] != want) {
                    single = false;
                    break;
                }
        values[r] = single ? 1.0 : 0.0;
    });
    return {make_record(cfg, "connectivity", "epsilon", cfg.epsilon, mean_stderr(values))};
}

std::vector<ResultRecord> run_counterexample(const ExperimentConfig& cfg) {
    const LatticeWindow window = config_window(cfg);
    if (cfg.scales.empty()) throw std::domain_error("counterexample needs a scale list");
    std::vector<BridgingEstimate> estimates;
    for (int n : cfg.scales)
        estimates.push_back(bridging_probability(window, n, cfg.epsilon, cfg.replicates,
                                                 cfg.seed, cfg.threads));
    std::vector<ResultRecord> records;
    for (std::size_t s = 0; s < cfg.scales.size(); ++s)
        records.push_back(make_record(cfg, "counterexample", "n", cfg.scales[s],
                                      {estimates[s].removed_estimate,
                                       estimates[s].removed_stderr}));
    for (std::size_t s = 0; s < cfg.scales.size(); ++s)
        records.push_back(make_record(cfg, "counterexample-thread", "n", cfg.scales[s],
                                      {estimates[s].intact_estimate,
                                       estimates[s].intact_stderr}));
    return records;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::dual_pairwise: return estimate_dual_pairwise(cfg);
        case ExperimentKind::dual_cluster_size: return estimate_dual_cluster_size(cfg);
        case ExperimentKind::ek_decay: {
            std::vector<ResultRecord> records;
            estimate_ek_decay(cfg, &records);
            return records;
        }
        case ExperimentKind::marginal_an: return estimate_marginal_an(cfg);
        case ExperimentKind::one_dependence: {
            std::vector<ResultRecord> records;
            check_one_dependence(cfg, &records);
            return records;
        }
        case ExperimentKind::halfplane: return run_halfplane(cfg);
        case ExperimentKind::pc_thinning: return run_pc_thinning(cfg);
        case ExperimentKind::connectivity: return run_connectivity(cfg);
        case ExperimentKind::counterexample: return run_counterexample(cfg);
    }
    throw std::domain_error("unknown experiment");
}

namespace {

std::string format_double(double v) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, end);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("bad numeric field: " + s);
    return v;
}

}  // namespace

std::string results_to_csv(const std::vector<ResultRecord>& records) {
    std::string out =
        "experiment,generator,epsilon,param_name,param_value,estimate,stderr,bound,replicates,seed\n";
    for (const ResultRecord& rec : records) {
        out += rec.experiment;
        out += ',';
        out += rec.generator;
        out += ',';
        out += format_double(rec.epsilon);
        out += ',';
        out += rec.param_name;
        out += ',';
        out += format_double(rec.param_value);
        out += ',';
        out += format_double(rec.estimate);
        out += ',';
        out += format_double(rec.stderr_);
        out += ',';
        if (rec.bound) out += format_double(*rec.bound);
        out += ',';
        out += std::to_string(rec.replicates);
        out += ',';
        out += std::to_string(rec.seed);
        out += '\n';
    }
    return out;
}

void emit_results(const std::vector<ResultRecord>& records, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << results_to_csv(records);
    if (!file.flush()) throw std::runtime_error("write failed: " + path);
}

std::vector<ResultRecord> parse_results(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(file, line)) throw std::runtime_error("empty file: " + path);
    std::vector<ResultRecord> records;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 10) throw std::runtime_error("bad row in " + path + ": " + line);
        ResultRecord rec;
        rec.experiment = fields[0];
        rec.generator = fields[1];
        rec.epsilon = parse_double(fields[2]);
        rec.param_name = fields[3];
        rec.param_value = parse_double(fields[4]);
        rec.estimate = parse_double(fields[5]);
        rec.stderr_ = parse_double(fields[6]);
        if (!fields[7].empty()) rec.bound = parse_double(fields[7]);
        rec.replicates = std::stoll(fields[8]);
        rec.seed = std::stoull(fields[9]);
        records.push_back(std::move(rec));
    }
    return records;
}

void emit_manifest(const ExperimentConfig& cfg, const std::string& csv_path) {
    nlohmann::json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["experiment"] = experiment_name(cfg.experiment);
    manifest["generator"] = {{"kind", base_name(cfg)},
                             {"spacing", cfg.generator.spacing},
                             {"seed", cfg.generator.seed}};
    manifest["width"] = cfg.width;
    manifest["height"] = cfg.height;
    manifest["boundary_mode"] =
        cfg.boundary_mode == BoundaryMode::half_plane ? "half-plane" : "open-box";
    manifest["epsilon"] = cfg.epsilon;
    if (cfg.q) manifest["q"] = *cfg.q;
    manifest["q_grid"] = cfg.q_grid;
    manifest["scales"] = cfg.scales;
    manifest["replicates"] = cfg.replicates;
    manifest["seed"] = cfg.seed;
    manifest["threads"] = cfg.threads;
    manifest["n_max"] = cfg.n_max;
    manifest["csv"] = csv_path;

    const std::string path = csv_path + ".manifest.json";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << manifest.dump(2) << '\n';
    if (!file.flush()) throw std::runtime_error("write failed: " + path);
}

void emit_plot_script(const std::string& csv_path, const std::string& script_path) {
    std::ofstream file(script_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + script_path);
    file << "#!/usr/bin/env python3\n"
            "\"\"\"Plot estimates vs parameter for each experiment in the CSV.\"\"\"\n"
            "import csv\n"
            "import collections\n"
            "import matplotlib\n"
            "matplotlib.use(\"Agg\")\n"
            "import matplotlib.pyplot as plt\n"
            "\n"
            "CSV = \""
         << csv_path
         << "\"\n"
            "groups = collections.defaultdict(list)\n"
            "with open(CSV) as fh:\n"
            "    for row in csv.DictReader(fh):\n"
            "        groups[row[\"experiment\"]].append(row)\n"
            "fig, axes = plt.subplots(len(groups), 1, figsize=(6, 4 * len(groups)),\n"
            "                         squeeze=False)\n"
            "for ax, (name, rows) in zip(axes.flat, sorted(groups.items())):\n"
            "    xs = [float(r[\"param_value\"]) for r in rows]\n"
            "    ys = [float(r[\"estimate\"]) for r in rows]\n"
            "    es = [float(r[\"stderr\"]) for r in rows]\n"
            "    ax.errorbar(xs, ys, yerr=es, marker=\"o\", label=\"estimate\")\n"
            "    bounds = [(x, float(r[\"bound\"])) for x, r in zip(xs, rows) if r[\"bound\"]]\n"
            "    if bounds:\n"
            "        ax.plot([b[0] for b in bounds], [b[1] for b in bounds], \"--\",\n"
            "                label=\"bound\")\n"
            "    ax.set_title(name)\n"
            "    ax.set_xlabel(rows[0][\"param_name\"])\n"
            "    ax.legend()\n"
            "fig.tight_layout()\n"
            "fig.savefig(CSV + \".png\", dpi=150)\n"
            "print(\"wrote\", CSV + \".png\")\n";
    if (!file.flush()) throw std::runtime_error("write failed: " + script_path);
}

EdgeSet read_edge_list(const std::string& path, const LatticeWindow& window) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open: " + path);
    EdgeSet configuration(window);
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        int x, y;
        std::string dir;
        if (!(row >> x)) continue;  // blank line
        if (!(row >> y >> dir) || (dir != "E" && dir != "N"))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'x y E|N'");
        const EdgeId edge{{x, y}, dir == "E" ? EdgeDir::east : EdgeDir::north};
        if (!window.contains(edge))
            throw std::domain_error(path + ":" + std::to_string(lineno) + ": edge outside window");
        configuration.set(edge);
    }
    return configuration;
}

void write_edge_list(const EdgeSet& configuration, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    const LatticeWindow& window = configuration.window();
    file << "# " << window.width() << "x" << window.height() << " window, one edge per line\n";
    for (int e = 0; e < configuration.size(); ++e) {
        if (!configuration.test(e)) continue;
        const EdgeId edge = window.edge_at(e);
        file << edge.origin.x << ' ' << edge.origin.y << ' '
             << (edge.dir == EdgeDir::east ? 'E' : 'N') << '\n';
    }
    if (!file.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace perc
