#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perc/counterexample.hpp"
#include "perc/duality.hpp"
#include "perc/experiments.hpp"
#include "perc/generators.hpp"

namespace {

struct CliOptions {
    int width = 128;
    int height = 128;
    std::string generator = "foliation-h";
    int spacing = 1;
    double epsilon = 0.3;
    double q = 0.0;
    std::string q_grid;
    std::string scales;
    int replicates = 1000;
    std::uint64_t seed = 1;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string out;
    std::string config_path;
    std::string x_file;
    std::string orientation = "auto";
    int n_max = 2;
    std::string plot_script;
};

void add_common_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--width", opt.width, "window width in vertices");
    sub->add_option("--height", opt.height, "window height in vertices");
    sub->add_option("--generator", opt.generator, "base configuration family")
        ->check(CLI::IsMember({"foliation-h", "foliation-v", "spanning-tree", "comb"}));
    sub->add_option("--spacing", opt.spacing, "comb tooth spacing");
    sub->add_option("--epsilon", opt.epsilon, "Bernoulli addition rate");
    sub->add_option("--q", opt.q, "thinning keep rate");
    sub->add_option("--q-grid", opt.q_grid, "comma-separated q values");
    sub->add_option("--scales", opt.scales, "comma-separated scale list");
    sub->add_option("--replicates", opt.replicates, "Monte Carlo replicates");
    sub->add_option("--seed", opt.seed, "master seed");
    sub->add_option("--threads", opt.threads, "worker threads");
    sub->add_option("--out", opt.out, "CSV output path (stdout when omitted)");
    sub->add_option("--config", opt.config_path, "JSON config file; flags override it");
    sub->add_option("--x-file", opt.x_file, "edge-list file supplying X");
    sub->add_option("--orientation", opt.orientation, "measured pair orientation")
        ->check(CLI::IsMember({"auto", "horizontal", "vertical"}));
    sub->add_option("--n-max", opt.n_max, "largest annulus scale in the random field");
    sub->add_option("--plot-script", opt.plot_script, "also emit a python plot script here");
}

// fill options that were not given on the command line from the JSON file
void apply_config_file(CLI::App* sub, CliOptions& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream file(opt.config_path);
    if (!file) throw std::runtime_error("cannot open config: " + opt.config_path);
    nlohmann::json config;
    file >> config;

    auto load = [&](const char* flag, const char* key, auto& field) {
        if (sub->count(flag) == 0 && config.contains(key)) field = config[key].get<std::decay_t<decltype(field)>>();
    };
    load("--width", "width", opt.width);
    load("--height", "height", opt.height);
    load("--generator", "generator", opt.generator);
    load("--spacing", "spacing", opt.spacing);
    load("--epsilon", "epsilon", opt.epsilon);
    load("--q", "q", opt.q);
    load("--q-grid", "q_grid", opt.q_grid);
    load("--scales", "scales", opt.scales);
    load("--replicates", "replicates", opt.replicates);
    load("--seed", "seed", opt.seed);
    load("--threads", "threads", opt.threads);
    load("--out", "out", opt.out);
    load("--x-file", "x_file", opt.x_file);
    load("--orientation", "orientation", opt.orientation);
    load("--n-max", "n_max", opt.n_max);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stoi(item));
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw std::domain_error("scales must be strictly increasing");
    return values;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) values.push_back(std::stod(item));
    return values;
}

perc::PairOrientation parse_orientation(const std::string& name) {
    if (name == "horizontal") return perc::PairOrientation::horizontal;
    if (name == "vertical") return perc::PairOrientation::vertical;
    return perc::PairOrientation::automatic;
}

perc::ExperimentConfig build_config(const CliOptions& opt, perc::ExperimentKind kind,
                                    perc::BoundaryMode mode) {
    perc::ExperimentConfig cfg;
    cfg.experiment = kind;
    cfg.generator.kind = perc::generator_from_name(opt.generator);
    cfg.generator.spacing = opt.spacing;
    cfg.generator.seed = opt.seed;
    cfg.width = opt.width;
    cfg.height = opt.height;
    cfg.boundary_mode = mode;
    cfg.epsilon = opt.epsilon;
    if (opt.q > 0.0) cfg.q = opt.q;
    cfg.q_grid = parse_double_list(opt.q_grid);
    cfg.scales = parse_int_list(opt.scales);
    cfg.replicates = opt.replicates;
    cfg.seed = opt.seed;
    cfg.threads = std::max(1, opt.threads);
    cfg.orientation = parse_orientation(opt.orientation);
    cfg.n_max = opt.n_max;
    cfg.out_path = opt.out;
    if (!opt.x_file.empty())
        cfg.x_override = perc::read_edge_list(
            opt.x_file, perc::LatticeWindow(opt.width, opt.height, mode));
    return cfg;
}

int run_experiment_command(const CliOptions& opt, perc::ExperimentKind kind,
                           perc::BoundaryMode mode) {
    const perc::ExperimentConfig cfg = build_config(opt, kind, mode);
    const std::vector<perc::ResultRecord> records = perc::run_experiment(cfg);
    if (cfg.out_path.empty()) {
        std::cout << perc::results_to_csv(records);
    } else {
        perc::emit_results(records, cfg.out_path);
        perc::emit_manifest(cfg, cfg.out_path);
        std::cout << "wrote " << cfg.out_path << "\n";
    }
    if (!opt.plot_script.empty()) {
        const std::string csv = cfg.out_path.empty() ? "results.csv" : cfg.out_path;
        perc::emit_plot_script(csv, opt.plot_script);
        std::cout << "wrote " << opt.plot_script << "\n";
    }
    return 0;
}

int run_generate(const CliOptions& opt) {
    const perc::LatticeWindow window(opt.width, opt.height);
    perc::GeneratorSpec spec;
    spec.kind = perc::generator_from_name(opt.generator);
    spec.spacing = opt.spacing;
    spec.seed = opt.seed;
    const perc::EdgeSet x = opt.x_file.empty()
                                ? perc::generate(spec, window)
                                : perc::read_edge_list(opt.x_file, window);
    std::cout << "window: " << opt.width << "x" << opt.height << "\n"
              << "edges: " << x.count() << "\n"
              << "everywhere_percolating: "
              << (perc::is_everywhere_percolating(x) ? "true" : "false") << "\n"
              << "densely_percolating_r1: "
              << (perc::is_densely_percolating(x, 1) ? "true" : "false") << "\n";
    if (!opt.out.empty()) {
        perc::write_edge_list(x, opt.out);
        std::cout << "wrote " << opt.out << "\n";
    }
    return 0;
}

int run_dual_check(const CliOptions& opt) {
    const perc::LatticeWindow window(opt.width, opt.height);
    perc::GeneratorSpec spec;
    spec.kind = perc::generator_from_name(opt.generator);
    spec.spacing = opt.spacing;
    spec.seed = opt.seed;
    const perc::EdgeSet x = opt.x_file.empty()
                                ? perc::generate(spec, window)
                                : perc::read_edge_list(opt.x_file, window);
    const perc::DualEdgeSet dual = perc::to_dual(x);
    const perc::DualClusterLabeling labeling = perc::dual_clusters(dual);
    std::int64_t max_size = 0;
    int frame_touching = 0;
    for (int c = 0; c < labeling.cluster_count; ++c) {
        max_size = std::max(max_size, labeling.sizes[c]);
        if (labeling.sizes[c] > 1 &&
            (labeling.min_i[c] == 0 || labeling.max_i[c] == dual.dual_width() - 1 ||
             labeling.min_j[c] == 0 || labeling.max_j[c] == dual.dual_height() - 1))
            ++frame_touching;
    }
    std::cout << "interior_dual_cycle: " << (perc::has_dual_cycle(dual) ? "true" : "false")
              << "\n"
              << "dual_edges_present: " << dual.count() << "\n"
              << "dual_components: " << labeling.cluster_count << "\n"
              << "max_component_size: " << max_size << "\n"
              << "frame_touching_components: " << frame_touching << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z^2 bond percolation lab: everywhere-percolating configurations under "
                 "epsilon-Bernoulli noise"};
    app.require_subcommand(1);

    struct SubcommandSpec {
        const char* name;
        const char* help;
        perc::ExperimentKind kind;
        perc::BoundaryMode mode;
        const char* default_scales;
    };
    const SubcommandSpec experiment_subs[] = {
        {"dual-pairwise", "dual connectivity vs L1 distance, with the (1-eps)^k bound",
         perc::ExperimentKind::dual_pairwise, perc::BoundaryMode::open_box, "1,2,3,4,5,6,7,8"},
        {"dual-cluster-size", "mean dual cluster size of a fixed interior face",
         perc::ExperimentKind::dual_cluster_size, perc::BoundaryMode::open_box, ""},
        {"ek-decay", "disconnection probability inside growing boxes",
         perc::ExperimentKind::ek_decay, perc::BoundaryMode::open_box, "4,8,16,32"},
        {"marginal-an", "close-connection probability of a coarse edge vs scale",
         perc::ExperimentKind::marginal_an, perc::BoundaryMode::open_box, "4,8,16,32"},
        {"one-dependence", "covariances of endpoint-disjoint coarse edge pairs",
         perc::ExperimentKind::one_dependence, perc::BoundaryMode::open_box, "8"},
        {"halfplane", "left-right crossing on the half-plane window",
         perc::ExperimentKind::halfplane, perc::BoundaryMode::half_plane, ""},
        {"pc-thinning", "left-right crossing of the q-thinned configuration",
         perc::ExperimentKind::pc_thinning, perc::BoundaryMode::open_box, ""},
        {"connectivity", "single-cluster fraction of the central sub-window",
         perc::ExperimentKind::connectivity, perc::BoundaryMode::open_box, ""},
        {"counterexample", "annulus bridging probability vs scale",
         perc::ExperimentKind::counterexample, perc::BoundaryMode::open_box, "3,4,5,6"},
    };

    std::vector<std::unique_ptr<CliOptions>> option_blocks;
    struct Pending {
        CLI::App* sub;
        CliOptions* opt;
        int command;  // 0 experiment, 1 generate, 2 dual-check
        perc::ExperimentKind kind;
        perc::BoundaryMode mode;
    };
    std::vector<Pending> pending;

    for (const SubcommandSpec& spec : experiment_subs) {
        auto opt = std::make_unique<CliOptions>();
        opt->scales = spec.default_scales;
        if (spec.kind == perc::ExperimentKind::pc_thinning) opt->q_grid = "0.9,0.95,0.98,0.999";
        if (spec.kind == perc::ExperimentKind::counterexample) {
            opt->width = 96;
            opt->height = 96;
        }
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_common_options(sub, *opt);
        pending.push_back({sub, opt.get(), 0, spec.kind, spec.mode});
        option_blocks.push_back(std::move(opt));
    }
    {
        auto opt = std::make_unique<CliOptions>();
        CLI::App* sub = app.add_subcommand("generate",
                                           "build a base configuration and check its predicates");
        add_common_options(sub, *opt);
        pending.push_back({sub, opt.get(), 1, perc::ExperimentKind::connectivity,
                           perc::BoundaryMode::open_box});
        option_blocks.push_back(std::move(opt));
    }
    {
        auto opt = std::make_unique<CliOptions>();
        CLI::App* sub = app.add_subcommand("dual-check",
                                           "dual forest diagnostics of a base configuration");
        add_common_options(sub, *opt);
        pending.push_back({sub, opt.get(), 2, perc::ExperimentKind::connectivity,
                           perc::BoundaryMode::open_box});
        option_blocks.push_back(std::move(opt));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const Pending& p : pending) {
            if (!p.sub->parsed()) continue;
            apply_config_file(p.sub, *p.opt);
            if (p.command == 1) return run_generate(*p.opt);
            if (p.command == 2) return run_dual_check(*p.opt);
            return run_experiment_command(*p.opt, p.kind, p.mode);
        }
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
