// ctrlplace: controller placement planning for latency-weighted networks.
//
// Subcommands: solve | sweep | reliability | gen-example | convert.
// Exit codes: 0 success, 1 I/O error, 2 parse/validation error, 3 infeasible
// problem (disconnected graph, exhausted enumeration budget).

#include "ctrlplace/distance_matrix.hpp"
#include "ctrlplace/errors.hpp"
#include "ctrlplace/generator.hpp"
#include "ctrlplace/k_selection.hpp"
#include "ctrlplace/metrics.hpp"
#include "ctrlplace/reliability.hpp"
#include "ctrlplace/solvers.hpp"
#include "ctrlplace/text.hpp"
#include "ctrlplace/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ctrlplace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed while reading '" + path + "'");
    return buffer.str();
}

/// Temp file in the target directory plus rename; the visible file is never
/// half-written.
void write_file_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("failed while writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
}

TopologyFormat parse_format(const std::string& name) {
    if (name == "adjacency") return TopologyFormat::Adjacency;
    if (name == "edgelist") return TopologyFormat::EdgeList;
    if (name == "json") return TopologyFormat::Json;
    throw ValidationError("unknown format '" + name + "'");
}

Topology load_input(const std::string& path, const std::string& format) {
    return load_topology(read_file(path), parse_format(format));
}

Objective parse_objective(const std::string& name, std::optional<double> bound) {
    if (name == "avg") return Objective::average();
    if (name == "worst") return Objective::worst();
    if (name == "coverage") {
        if (!bound) throw ValidationError("--objective coverage requires --bound");
        return Objective::coverage(*bound);
    }
    throw ValidationError("unknown objective '" + name + "'");
}

SolverId parse_solver(const std::string& name) {
    if (name == "single") return SolverId::SingleOptimal;
    if (name == "brute") return SolverId::BruteForce;
    if (name == "random") return SolverId::RandomBaseline;
    if (name == "local") return SolverId::LocalSearch;
    if (name == "kmedoids") return SolverId::KMedoids;
    throw ValidationError("unknown solver '" + name + "'");
}

std::string objective_name(const Objective& objective) {
    switch (objective.kind) {
    case ObjectiveKind::AverageLatency: return "avg";
    case ObjectiveKind::WorstLatency: return "worst";
    case ObjectiveKind::CoverageWithinBound: return "coverage";
    }
    return "unknown";
}

ordered_json placement_json(const Topology& topology, const Placement& placement) {
    ordered_json block;
    block["controllers"] = placement.ids();
    auto labels = ordered_json::array();
    for (const NodeId id : placement.ids()) labels.push_back(topology.label(id));
    block["labels"] = labels;
    return block;
}

ordered_json result_json(const Topology& topology, const DistanceMatrix& dist,
                         const SolveResult& result) {
    ordered_json doc;
    doc["solver"] = solver_name(result.solver);
    doc["objective"] = objective_name(result.objective);
    if (result.objective.kind == ObjectiveKind::CoverageWithinBound)
        doc["bound"] = result.objective.bound;
    doc["k"] = result.placement.k();
    doc["placement"] = placement_json(topology, result.placement);
    doc["objective_value"] = result.objective_value;
    doc["total_delay"] = result.total_delay;
    doc["average_delay"] = result.total_delay / topology.node_count();
    doc["worst_delay"] = worst_latency(dist, result.placement);
    doc["iterations"] = result.iterations;
    doc["evaluations"] = result.evaluations;
    doc["converged"] = result.converged;
    if (!result.clusters.empty()) {
        auto clusters = ordered_json::array();
        for (const auto& cluster : result.clusters) {
            ordered_json entry;
            entry["controller"] = cluster.controller;
            entry["controller_label"] = topology.label(cluster.controller);
            entry["members"] = cluster.members;
            auto member_labels = ordered_json::array();
            for (const NodeId member : cluster.members)
                member_labels.push_back(topology.label(member));
            entry["member_labels"] = member_labels;
            entry["total_delay_in_cluster"] = cluster.total_delay;
            clusters.push_back(std::move(entry));
        }
        doc["clusters"] = clusters;
    }
    auto assignment = ordered_json::array();
    for (NodeId v = 0; v < topology.node_count(); ++v) {
        assignment.push_back({{"node", v},
                              {"label", topology.label(v)},
                              {"controller", result.assignment.controller[static_cast<std::size_t>(v)]},
                              {"delay", result.assignment.delay[static_cast<std::size_t>(v)]}});
    }
    doc["assignment"] = assignment;
    return doc;
}

struct CommonOptions {
    std::string input;
    std::string format = "edgelist";
    std::string out_dir = ".";
    std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOptions& options, bool needs_input = true) {
    if (needs_input)
        cmd->add_option("--input", options.input, "topology file")->required();
    cmd->add_option("--format", options.format, "input format: adjacency|edgelist|json")
        ->check(CLI::IsMember({"adjacency", "edgelist", "json"}));
    cmd->add_option("--out-dir", options.out_dir, "directory for report files");
    cmd->add_option("--seed", options.seed, "root seed for all randomized steps");
}

// ---- solve ------------------------------------------------------------------

struct SolveOptions {
    CommonOptions common;
    std::string solver = "brute";
    std::string objective = "avg";
    std::optional<double> bound;
    int k = 1;
    int trials = 100;
    int max_iters = 1000;
    std::uint64_t budget = 10'000'000;
};

int run_solve(const SolveOptions& options) {
    const Topology topology = load_input(options.common.input, options.common.format);
    const DistanceMatrix dist = all_pairs_distances(topology);
    const Objective objective = parse_objective(options.objective, options.bound);
    const SolverId solver = parse_solver(options.solver);

    ordered_json doc;
    doc["command"] = "solve";
    doc["input"] = options.common.input;
    doc["seed"] = options.common.seed;

    SolveResult result = [&] {
        switch (solver) {
        case SolverId::SingleOptimal: return solve_single_optimal(dist);
        case SolverId::BruteForce:
            return solve_brute_force(dist, options.k, objective, options.budget);
        case SolverId::LocalSearch:
            return solve_local_search(dist, options.k, objective, options.common.seed,
                                      options.max_iters);
        case SolverId::KMedoids:
            return solve_kmedoids(dist, options.k, options.common.seed, options.max_iters);
        case SolverId::RandomBaseline: {
            const RandomBaselineResult baseline = solve_random_baseline(
                dist, options.k, objective, options.trials, options.common.seed);
            ordered_json trials = ordered_json::array();
            for (const auto& trial : baseline.trials) {
                trials.push_back({{"controllers", trial.placement.ids()},
                                  {"value", trial.objective_value}});
            }
            doc["trials"] = trials;
            doc["summary"] = {{"mean", baseline.mean_value},
                              {"min", baseline.min_value},
                              {"max", baseline.max_value},
                              {"best_trial", baseline.best_trial}};
            return baseline.trials[static_cast<std::size_t>(baseline.best_trial)];
        }
        }
        throw ValidationError("unknown solver");
    }();

    doc.update(result_json(topology, dist, result));
    const fs::path out = fs::path(options.common.out_dir) / "report.json";
    write_file_atomic(out, doc.dump(2) + "\n");

    std::cout << "placement:";
    for (const NodeId id : result.placement.ids()) std::cout << ' ' << topology.label(id);
    std::cout << "\nobjective (" << objective_name(objective)
              << "): " << format_number(result.objective_value)
              << "\ntotal delay: " << format_number(result.total_delay) << "\nreport: " << out.string()
              << "\n";
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepCliOptions {
    CommonOptions common;
    std::string solver = "brute";
    std::string objective = "avg";
    std::optional<double> bound;
    int k_max = 0;
    double tau = 0.05;
    int trials = 100;
    int max_iters = 1000;
    std::uint64_t budget = 10'000'000;
    bool fallback = false;
};

int run_sweep(const SweepCliOptions& options) {
    const Topology topology = load_input(options.common.input, options.common.format);
    const DistanceMatrix dist = all_pairs_distances(topology);

    SweepOptions sweep;
    sweep.objective = parse_objective(options.objective, options.bound);
    sweep.trials = options.trials;
    sweep.max_iters = options.max_iters;
    sweep.budget = options.budget;
    sweep.fallback_to_local = options.fallback;

    const KCurve curve =
        sweep_k(dist, options.k_max, parse_solver(options.solver), options.common.seed, sweep);
    const KSelection selection = select_optimal_k(curve, options.tau);

    const fs::path curve_path = fs::path(options.common.out_dir) / "curve.csv";
    write_file_atomic(curve_path, to_curve_csv(curve));

    ordered_json doc;
    doc["command"] = "sweep";
    doc["input"] = options.common.input;
    doc["solver"] = options.solver;
    doc["objective"] = options.objective;
    doc["seed"] = options.common.seed;
    doc["k_max"] = options.k_max;
    doc["tau"] = selection.tau;
    doc["chosen_k"] = selection.chosen_k;
    doc["rule"] = selection.rule;
    auto entries = ordered_json::array();
    for (const auto& entry : curve.entries) {
        ordered_json row;
        row["k"] = entry.k;
        row["value"] = entry.value;
        if (entry.decrease) row["decrease"] = *entry.decrease;
        row["solver"] = solver_name(entry.solver);
        if (entry.fell_back) row["fell_back"] = true;
        entries.push_back(std::move(row));
    }
    doc["curve"] = entries;
    const fs::path selection_path = fs::path(options.common.out_dir) / "selection.json";
    write_file_atomic(selection_path, doc.dump(2) + "\n");

    std::cout << "chosen k: " << selection.chosen_k << " (tau " << format_number(options.tau)
              << ")\ncurve: " << curve_path.string() << "\nselection: " << selection_path.string()
              << "\n";
    return kExitOk;
}

// ---- reliability ------------------------------------------------------------

struct ReliabilityOptions {
    CommonOptions common;
    std::string solver = "kmedoids";
    std::vector<int> k_values;
    std::vector<std::string> explicit_placements;
    std::string scenarios = "single-link";
    std::string scenario_file;
    double qs = 0.0;
    std::optional<double> rank_weight; // opt-in scalar ranking, an extrapolation
    int max_iters = 1000;
    std::uint64_t budget = 10'000'000;
};

int run_reliability(const ReliabilityOptions& options) {
    const Topology topology = load_input(options.common.input, options.common.format);
    const DistanceMatrix dist = all_pairs_distances(topology);

    std::vector<Placement> placements;
    for (const std::string& spec : options.explicit_placements) {
        std::vector<NodeId> ids;
        for (const auto& cell : split_csv_line(spec)) {
            const auto value = parse_number(cell);
            if (!value || *value != std::floor(*value) || *value < 0 ||
                *value >= topology.node_count())
                throw ValidationError("bad controller id '" + cell + "' in --controllers");
            ids.push_back(static_cast<NodeId>(*value));
        }
        placements.emplace_back(std::move(ids));
    }
    const SolverId solver = parse_solver(options.solver);
    for (const int k : options.k_values) {
        switch (solver) {
        case SolverId::SingleOptimal:
            placements.push_back(solve_single_optimal(dist).placement);
            break;
        case SolverId::BruteForce:
            placements.push_back(
                solve_brute_force(dist, k, Objective::average(), options.budget).placement);
            break;
        case SolverId::LocalSearch:
            placements.push_back(solve_local_search(dist, k, Objective::average(),
                                                    options.common.seed, options.max_iters)
                                     .placement);
            break;
        case SolverId::KMedoids:
            placements.push_back(
                solve_kmedoids(dist, k, options.common.seed, options.max_iters).placement);
            break;
        case SolverId::RandomBaseline: {
            const auto baseline = solve_random_baseline(dist, k, Objective::average(), 1,
                                                        options.common.seed);
            placements.push_back(baseline.trials.front().placement);
            break;
        }
        }
    }
    if (placements.empty())
        throw ValidationError("reliability needs --k values or --controllers placements");

    std::vector<FailureScenario> scenarios;
    if (options.scenarios == "single-link") {
        scenarios = single_link_scenarios(topology, options.qs);
    } else if (options.scenarios == "single-node") {
        scenarios = single_node_scenarios(topology, options.qs);
    } else if (options.scenarios == "file") {
        if (options.scenario_file.empty())
            throw ValidationError("--scenarios file requires --scenario-file");
        scenarios = load_scenarios_json(topology, read_file(options.scenario_file));
    } else {
        throw ValidationError("unknown scenario family '" + options.scenarios + "'");
    }

    const TradeoffReport report = evaluate_tradeoff(topology, placements, scenarios);
    std::vector<double> scores;
    if (options.rank_weight) scores = weighted_scores(report, *options.rank_weight);
    const fs::path json_path = fs::path(options.common.out_dir) / "tradeoff.json";
    const fs::path csv_path = fs::path(options.common.out_dir) / "tradeoff.csv";
    write_file_atomic(json_path, to_tradeoff_json(report, topology, options.scenarios,
                                                  options.rank_weight ? &scores : nullptr));
    write_file_atomic(csv_path, to_tradeoff_csv(report, topology, options.scenarios));

    std::cout << "placements evaluated: " << report.rows.size()
              << "\nscenarios: " << report.scenario_count << " (" << options.scenarios
              << ")\nreports: " << json_path.string() << ", " << csv_path.string() << "\n";
    return kExitOk;
}

// ---- gen-example ------------------------------------------------------------

struct GenOptions {
    CommonOptions common;
    std::vector<int> sizes{6, 6, 6, 5};
    double intra_min = 1.0;
    double intra_max = 30.0;
    double inter_min = 40.0;
    double inter_max = 100.0;
    double density = 0.4;
    int inter_edges = 1;
};

int run_gen_example(const GenOptions& options) {
    ClusteredTopologySpec spec;
    spec.cluster_sizes = options.sizes;
    spec.intra_weight_range = {options.intra_min, options.intra_max};
    spec.inter_weight_range = {options.inter_min, options.inter_max};
    spec.intra_density = options.density;
    spec.inter_edges_per_cluster_pair = options.inter_edges;
    spec.seed = options.common.seed;

    const ClusteredTopology result = generate_clustered(spec);
    const fs::path dir(options.common.out_dir);
    write_file_atomic(dir / "topology_edges.csv", to_edge_list_csv(result.topology));
    write_file_atomic(dir / "topology_adjacency.csv", to_adjacency_csv(result.topology));
    write_file_atomic(dir / "topology.json", to_topology_json(result.topology));

    std::string clusters = "node,label,cluster\n";
    for (NodeId v = 0; v < result.topology.node_count(); ++v) {
        clusters += std::to_string(v);
        clusters += ',';
        clusters += result.topology.label(v);
        clusters += ',';
        clusters += std::to_string(result.cluster_of[static_cast<std::size_t>(v)]);
        clusters += '\n';
    }
    write_file_atomic(dir / "topology_clusters.csv", clusters);

    std::cout << "nodes: " << result.topology.node_count()
              << "\nedges: " << result.topology.edges().size() << "\nfiles: "
              << (dir / "topology_edges.csv").string() << ", "
              << (dir / "topology_adjacency.csv").string() << ", "
              << (dir / "topology.json").string() << ", "
              << (dir / "topology_clusters.csv").string() << "\n";
    return kExitOk;
}

// ---- convert ----------------------------------------------------------------

struct ConvertOptions {
    CommonOptions common;
    std::string to = "json";
    std::string out;
};

int run_convert(const ConvertOptions& options) {
    const Topology topology = load_input(options.common.input, options.common.format);
    write_file_atomic(options.out, serialize_topology(topology, parse_format(options.to)));
    std::cout << "wrote " << options.out << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controller placement planning on latency-weighted network graphs"};
    app.require_subcommand(1);

    SolveOptions solve_options;
    CLI::App* solve_cmd = app.add_subcommand("solve", "place controllers with one solver");
    add_common(solve_cmd, solve_options.common);
    solve_cmd->add_option("--solver", solve_options.solver,
                          "single|brute|local|kmedoids|random")
        ->check(CLI::IsMember({"single", "brute", "local", "kmedoids", "random"}));
    solve_cmd->add_option("--objective", solve_options.objective, "avg|worst|coverage")
        ->check(CLI::IsMember({"avg", "worst", "coverage"}));
    solve_cmd->add_option("--bound", solve_options.bound, "latency bound for coverage");
    solve_cmd->add_option("--k", solve_options.k, "number of controllers");
    solve_cmd->add_option("--trials", solve_options.trials, "random solver trials");
    solve_cmd->add_option("--max-iters", solve_options.max_iters, "iteration cap");
    solve_cmd->add_option("--budget", solve_options.budget, "brute-force evaluation budget");

    SweepCliOptions sweep_options;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "objective value for k = 1..k_max");
    add_common(sweep_cmd, sweep_options.common);
    sweep_cmd->add_option("--solver", sweep_options.solver, "brute|local|kmedoids|random")
        ->check(CLI::IsMember({"brute", "local", "kmedoids", "random"}));
    sweep_cmd->add_option("--objective", sweep_options.objective, "avg|worst|coverage")
        ->check(CLI::IsMember({"avg", "worst", "coverage"}));
    sweep_cmd->add_option("--bound", sweep_options.bound, "latency bound for coverage");
    sweep_cmd->add_option("--k-max", sweep_options.k_max, "largest controller count")->required();
    sweep_cmd->add_option("--tau", sweep_options.tau, "diminishing-returns threshold");
    sweep_cmd->add_option("--trials", sweep_options.trials, "random solver trials");
    sweep_cmd->add_option("--max-iters", sweep_options.max_iters, "iteration cap");
    sweep_cmd->add_option("--budget", sweep_options.budget, "brute-force evaluation budget");
    sweep_cmd->add_flag("--fallback", sweep_options.fallback,
                        "swap search where brute force exceeds the budget");

    ReliabilityOptions reliability_options;
    CLI::App* reliability_cmd =
        app.add_subcommand("reliability", "latency/reliability trade-off report");
    add_common(reliability_cmd, reliability_options.common);
    reliability_cmd->add_option("--solver", reliability_options.solver,
                                "single|brute|local|kmedoids|random")
        ->check(CLI::IsMember({"single", "brute", "local", "kmedoids", "random"}));
    reliability_cmd->add_option("--k", reliability_options.k_values,
                                "controller counts to evaluate (repeatable)");
    reliability_cmd->add_option("--controllers", reliability_options.explicit_placements,
                                "explicit placement as comma-joined node ids (repeatable)");
    reliability_cmd->add_option("--scenarios", reliability_options.scenarios,
                                "single-link|single-node|file")
        ->check(CLI::IsMember({"single-link", "single-node", "file"}));
    reliability_cmd->add_option("--scenario-file", reliability_options.scenario_file,
                                "scenario JSON document");
    reliability_cmd->add_option("--qs", reliability_options.qs,
                                "failure probability of element-disjoint paths");
    reliability_cmd->add_option(
        "--rank-weight", reliability_options.rank_weight,
        "emit an extrapolated scalar score: weight * latency + rest * reliability");
    reliability_cmd->add_option("--max-iters", reliability_options.max_iters, "iteration cap");
    reliability_cmd->add_option("--budget", reliability_options.budget,
                                "brute-force evaluation budget");

    GenOptions gen_options;
    CLI::App* gen_cmd = app.add_subcommand("gen-example", "write the clustered example network");
    add_common(gen_cmd, gen_options.common, /*needs_input=*/false);
    gen_cmd->add_option("--sizes", gen_options.sizes, "cluster sizes");
    gen_cmd->add_option("--intra-min", gen_options.intra_min, "intra-cluster weight minimum");
    gen_cmd->add_option("--intra-max", gen_options.intra_max, "intra-cluster weight maximum");
    gen_cmd->add_option("--inter-min", gen_options.inter_min, "inter-cluster weight minimum");
    gen_cmd->add_option("--inter-max", gen_options.inter_max, "inter-cluster weight maximum");
    gen_cmd->add_option("--density", gen_options.density, "intra-cluster pair density");
    gen_cmd->add_option("--inter-edges", gen_options.inter_edges, "links per cluster pair");

    ConvertOptions convert_options;
    CLI::App* convert_cmd = app.add_subcommand("convert", "re-serialize a topology");
    add_common(convert_cmd, convert_options.common);
    convert_cmd->add_option("--to", convert_options.to, "adjacency|edgelist|json")
        ->check(CLI::IsMember({"adjacency", "edgelist", "json"}));
    convert_cmd->add_option("--out", convert_options.out, "output file")->required();

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) {
            if (solve_cmd->count("--trials") > 0 && solve_options.solver != "random")
                throw ValidationError("--trials applies to --solver random only");
            if (solve_cmd->count("--bound") > 0 && solve_options.objective != "coverage")
                throw ValidationError("--bound applies to --objective coverage only");
            if (solve_cmd->count("--k") > 0 && solve_options.solver == "single" &&
                solve_options.k != 1)
                throw ValidationError("--solver single places exactly one controller");
            return run_solve(solve_options);
        }
        if (sweep_cmd->parsed()) {
            if (sweep_cmd->count("--trials") > 0 && sweep_options.solver != "random")
                throw ValidationError("--trials applies to --solver random only");
            if (sweep_cmd->count("--bound") > 0 && sweep_options.objective != "coverage")
                throw ValidationError("--bound applies to --objective coverage only");
            return run_sweep(sweep_options);
        }
        if (reliability_cmd->parsed()) return run_reliability(reliability_options);
        if (gen_cmd->parsed()) return run_gen_example(gen_options);
        if (convert_cmd->parsed()) return run_convert(convert_options);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
