#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perc/generators.hpp"
#include "perc/lattice.hpp"
#include "perc/percolation.hpp"

namespace perc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind {
    dual_pairwise,
    dual_cluster_size,
    ek_decay,
    marginal_an,
    one_dependence,
    halfplane,
    pc_thinning,
    connectivity,
    counterexample,
};

std::string experiment_name(ExperimentKind kind);

// Which way the measured vertex pair points. `automatic` picks the direction
// orthogonal to a foliation so the event is not satisfied by a single line of
// the base configuration (vertical otherwise).
enum class PairOrientation { automatic, horizontal, vertical };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::connectivity;
    GeneratorSpec generator;
    int width = 128;
    int height = 128;
    BoundaryMode boundary_mode = BoundaryMode::open_box;
    double epsilon = 0.3;
    std::optional<double> q;
    std::vector<double> q_grid;
    std::vector<int> scales;  // k values, n values, or L1 distances
    int replicates = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    PairOrientation orientation = PairOrientation::automatic;
    int n_max = 2;  // counterexample random-field scale cap
    std::string out_path;
    std::optional<EdgeSet> x_override;  // user-supplied X instead of a generator
};

struct ResultRecord {
    std::string experiment;
    std::string generator;
    double epsilon = 0.0;
    std::string param_name;
    double param_value = 0.0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::optional<double> bound;
    long long replicates = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
    std::vector<std::pair<int, double>> points;  // (k, estimate), all scales
    std::vector<int> excluded;                   // zero estimates left out of the fit
    int used_points = 0;
};

struct EdgePairCovariance {
    VertexId first_origin, second_origin;  // coarse origins
    EdgeDir first_dir = EdgeDir::east, second_dir = EdgeDir::east;
    bool vertex_disjoint = true;
    double covariance = 0.0;
    double stderr_ = 0.0;
    double first_marginal = 0.0;
    double second_marginal = 0.0;
};

struct OneDependenceReport {
    int scale = 0;
    std::vector<EdgePairCovariance> pairs;
};

std::vector<ResultRecord> estimate_dual_pairwise(const ExperimentConfig& config);
std::vector<ResultRecord> estimate_dual_cluster_size(const ExperimentConfig& config);
DecayFit estimate_ek_decay(const ExperimentConfig& config,
                           std::vector<ResultRecord>* records = nullptr);
std::vector<ResultRecord> estimate_marginal_an(const ExperimentConfig& config);
OneDependenceReport check_one_dependence(const ExperimentConfig& config,
                                         std::vector<ResultRecord>* records = nullptr);
std::vector<ResultRecord> run_halfplane(const ExperimentConfig& config);
std::vector<ResultRecord> run_pc_thinning(const ExperimentConfig& config);
std::vector<ResultRecord> run_connectivity(const ExperimentConfig& config);
std::vector<ResultRecord> run_counterexample(const ExperimentConfig& config);

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

// CSV with the fixed header
//   experiment,generator,epsilon,param_name,param_value,estimate,stderr,bound,replicates,seed
// Doubles use shortest round-trip representation so equal runs are
// byte-identical.
std::string results_to_csv(const std::vector<ResultRecord>& records);
void emit_results(const std::vector<ResultRecord>& records, const std::string& path);
std::vector<ResultRecord> parse_results(const std::string& path);

void emit_manifest(const ExperimentConfig& config, const std::string& csv_path);
void emit_plot_script(const std::string& csv_path, const std::string& script_path);

// Edge-list format: one edge per line, "x y {E|N}", '#' starts a comment.
EdgeSet read_edge_list(const std::string& path, const LatticeWindow& window);
void write_edge_list(const EdgeSet& configuration, const std::string& path);

}  // namespace perc
