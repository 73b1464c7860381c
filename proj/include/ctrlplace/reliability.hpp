#pragma once

#include "ctrlplace/metrics.hpp"
#include "ctrlplace/solvers.hpp"
#include "ctrlplace/topology.hpp"

#include <string>
#include <vector>

namespace ctrlplace {

/// The physical route carrying control traffic between two endpoints: the
/// traversed node sequence (endpoints included), the traversed link ids, and
/// the summed latency. Routing is shortest-path; among equal-latency routes
/// the lexicographically smallest node sequence from `from` wins.
struct ControlPath {
    NodeId from = 0;
    NodeId to = 0;
    std::vector<NodeId> nodes;
    std::vector<EdgeId> links; // links.size() == nodes.size() - 1
    double latency = 0.0;
};

/// All control paths induced by a placement: one per non-controller switch
/// to its assigned controller, plus a complete mesh between controllers.
struct ControlNetwork {
    std::vector<ControlPath> switch_paths;
    std::vector<ControlPath> mesh_paths;

    int total_paths() const {
        return static_cast<int>(switch_paths.size() + mesh_paths.size());
    }
    /// Paths in a stable order: switch paths first, then mesh paths.
    const ControlPath& path(int index) const {
        const auto i = static_cast<std::size_t>(index);
        return i < switch_paths.size() ? switch_paths[i] : mesh_paths[i - switch_paths.size()];
    }
};

/// A set of simultaneously failed physical elements. Control paths touching
/// any failed element fail outright; element-disjoint paths fail
/// independently with probability `disjoint_failure_prob`.
struct FailureScenario {
    std::string name;
    std::vector<NodeId> failed_nodes;
    std::vector<EdgeId> failed_links;
    double disjoint_failure_prob = 0.0;
};

ControlNetwork build_control_network(const Topology& topology, const Placement& placement,
                                     const Assignment& assignment);

/// Exact split of path indices (see ControlNetwork::path) into paths that
/// share an element with the failed set and paths disjoint from it.
struct PathPartition {
    std::vector<int> hit;
    std::vector<int> disjoint;
};

PathPartition classify_paths(const ControlNetwork& network, const FailureScenario& scenario);

/// Expected number of failed control paths:
/// |hit| + disjoint_failure_prob * |disjoint|.
double expected_failed_paths(const ControlNetwork& network, const FailureScenario& scenario);

enum class NodeOutcome { Assigned, Disconnected, FailedElement };

/// Post-failure control assignment. Surviving switches are re-homed to the
/// nearest reachable surviving controller over the surviving graph; nodes
/// with no reachable controller are flagged disconnected (never an error,
/// even when every controller failed).
struct PostFailureAssignment {
    std::vector<NodeOutcome> outcome; // per node
    std::vector<NodeId> controller;   // -1 unless Assigned
    std::vector<double> delay;        // infinity unless Assigned

    int disconnected_count() const;
};

PostFailureAssignment reroute_after_failure(const Topology& topology, const Placement& placement,
                                            const FailureScenario& scenario);

/// One scenario per link / per node. Names identify the failed element.
std::vector<FailureScenario> single_link_scenarios(const Topology& topology,
                                                   double disjoint_failure_prob);
std::vector<FailureScenario> single_node_scenarios(const Topology& topology,
                                                   double disjoint_failure_prob);

/// Scenario list document: {"scenarios":[{"name","failed_nodes":[ids],
/// "failed_links":[[u,v],...],"qs":p}]}. Links are endpoint id pairs.
std::vector<FailureScenario> load_scenarios_json(const Topology& topology, std::string_view text);

/// Latency/reliability summary of one placement across a scenario family.
struct PlacementTradeoff {
    Placement placement;
    double avg_latency = 0.0;
    double worst_latency = 0.0;
    double mean_failed_path_fraction = 0.0;   // expected failed / total paths
    double mean_disconnected_fraction = 0.0;  // disconnected / surviving switches
    double mean_post_failure_avg_latency = 0.0;
    bool dominated = false; // some other placement is strictly better everywhere
};

struct TradeoffReport {
    std::vector<PlacementTradeoff> rows;
    int scenario_count = 0;
};

/// Evaluates every placement against every scenario. Scenario evaluations
/// run in parallel; aggregation order is fixed, so the report is
/// deterministic.
TradeoffReport evaluate_tradeoff(const Topology& topology,
                                 const std::vector<Placement>& placements,
                                 const std::vector<FailureScenario>& scenarios);

/// Extrapolated scalar ranking of the rows: `latency_weight` scales the
/// max-normalized average latency, the remainder scales the max-normalized
/// mean of the two reliability fractions. A convenience ordering on top of
/// the report, not a substitute for it.
std::vector<double> weighted_scores(const TradeoffReport& report, double latency_weight);

std::string to_tradeoff_json(const TradeoffReport& report, const Topology& topology,
                             const std::string& family,
                             const std::vector<double>* scores = nullptr);
std::string to_tradeoff_csv(const TradeoffReport& report, const Topology& topology,
                            const std::string& family);

} // namespace ctrlplace
