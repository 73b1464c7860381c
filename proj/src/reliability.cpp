#include "ctrlplace/reliability.hpp"

#include "ctrlplace/distance_matrix.hpp"
#include "ctrlplace/errors.hpp"
#include "ctrlplace/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_set>

namespace ctrlplace {

namespace {

constexpr double kPathTolerance = 1e-9;

void validate_scenario(const Topology& topology, const FailureScenario& scenario) {
    const auto p = scenario.disjoint_failure_prob;
    if (!(p >= 0.0) || !(p <= 1.0))
        throw ValidationError("disjoint failure probability must be in [0, 1]");
    for (const NodeId v : scenario.failed_nodes)
        if (v < 0 || v >= topology.node_count())
            throw ValidationError("failure scenario references an unknown node id");
    for (const EdgeId e : scenario.failed_links)
        if (e < 0 || e >= static_cast<EdgeId>(topology.edges().size()))
            throw ValidationError("failure scenario references an unknown link id");
}

/// Walks the lexicographically smallest shortest path from `from` to `to`.
/// `dist_to_target` must be the single-source distances of `to`; the parent
/// edge of every node satisfies the exact relaxation equality there, so the
/// walk always finds a next hop.
ControlPath trace_path(const Topology& topology, NodeId from, NodeId to,
                       const std::vector<double>& dist_to_target) {
    ControlPath path;
    path.from = from;
    path.to = to;
    path.nodes.push_back(from);

    NodeId current = from;
    while (current != to) {
        NodeId next = -1;
        EdgeId via = -1;
        double weight = 0.0;
        for (const Neighbor& nb : topology.neighbors(current)) { // ascending by id
            if (dist_to_target[static_cast<std::size_t>(nb.to)] >=
                dist_to_target[static_cast<std::size_t>(current)])
                continue;
            const double through = dist_to_target[static_cast<std::size_t>(nb.to)] + nb.weight;
            if (std::abs(through - dist_to_target[static_cast<std::size_t>(current)]) <=
                kPathTolerance) {
                next = nb.to;
                via = nb.edge;
                weight = nb.weight;
                break;
            }
        }
        if (next < 0) throw InfeasibleError("no route between control path endpoints");
        path.latency += weight;
        path.nodes.push_back(next);
        path.links.push_back(via);
        current = next;
    }
    return path;
}

} // namespace

int PostFailureAssignment::disconnected_count() const {
    return static_cast<int>(std::count(outcome.begin(), outcome.end(), NodeOutcome::Disconnected));
}

ControlNetwork build_control_network(const Topology& topology, const Placement& placement,
                                     const Assignment& assignment) {
    const int n = topology.node_count();
    if (static_cast<int>(assignment.controller.size()) != n)
        throw ValidationError("assignment size does not match the topology");
    if (placement.ids().back() >= n)
        throw ValidationError("placement references a node outside the topology");

    // One distance field per controller, keyed for the path walker.
    std::vector<std::vector<double>> to_controller(placement.ids().size());
    for (std::size_t i = 0; i < placement.ids().size(); ++i)
        to_controller[i] = single_source_distances(topology, placement.ids()[i]);
    const auto field_of = [&](NodeId controller) -> const std::vector<double>& {
        const auto& ids = placement.ids();
        const auto it = std::lower_bound(ids.begin(), ids.end(), controller);
        return to_controller[static_cast<std::size_t>(it - ids.begin())];
    };

    ControlNetwork network;
    for (NodeId v = 0; v < n; ++v) {
        if (placement.contains(v)) continue;
        const NodeId controller = assignment.controller[static_cast<std::size_t>(v)];
        if (controller < 0 || !placement.contains(controller))
            throw ValidationError("assignment is inconsistent with the placement");
        network.switch_paths.push_back(trace_path(topology, v, controller, field_of(controller)));
    }
    const auto& ids = placement.ids();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            network.mesh_paths.push_back(trace_path(topology, ids[a], ids[b], field_of(ids[b])));
        }
    }
    return network;
}

PathPartition classify_paths(const ControlNetwork& network, const FailureScenario& scenario) {
    const std::unordered_set<NodeId> failed_nodes(scenario.failed_nodes.begin(),
                                                  scenario.failed_nodes.end());
    const std::unordered_set<EdgeId> failed_links(scenario.failed_links.begin(),
                                                  scenario.failed_links.end());
    PathPartition partition;
    for (int i = 0; i < network.total_paths(); ++i) {
        const ControlPath& path = network.path(i);
        bool hit = false;
        for (const NodeId v : path.nodes) {
            if (failed_nodes.count(v)) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            for (const EdgeId e : path.links) {
                if (failed_links.count(e)) {
                    hit = true;
                    break;
                }
            }
        }
        (hit ? partition.hit : partition.disjoint).push_back(i);
    }
    return partition;
}

double expected_failed_paths(const ControlNetwork& network, const FailureScenario& scenario) {
    const auto p = scenario.disjoint_failure_prob;
    if (!(p >= 0.0) || !(p <= 1.0))
        throw ValidationError("disjoint failure probability must be in [0, 1]");
    const PathPartition partition = classify_paths(network, scenario);
    return static_cast<double>(partition.hit.size()) +
           p * static_cast<double>(partition.disjoint.size());
}

PostFailureAssignment reroute_after_failure(const Topology& topology, const Placement& placement,
                                            const FailureScenario& scenario) {
    validate_scenario(topology, scenario);
    const int n = topology.node_count();
    const std::unordered_set<NodeId> failed_nodes(scenario.failed_nodes.begin(),
                                                  scenario.failed_nodes.end());
    const std::unordered_set<EdgeId> failed_links(scenario.failed_links.begin(),
                                                  scenario.failed_links.end());

    PostFailureAssignment out;
    out.outcome.assign(static_cast<std::size_t>(n), NodeOutcome::Disconnected);
    out.controller.assign(static_cast<std::size_t>(n), -1);
    out.delay.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    for (const NodeId v : scenario.failed_nodes)
        out.outcome[static_cast<std::size_t>(v)] = NodeOutcome::FailedElement;

    // Dijkstra from each surviving controller over the surviving graph;
    // every survivor keeps the nearest controller, lowest id on ties.
    for (const NodeId controller : placement.ids()) {
        if (failed_nodes.count(controller)) continue;
        std::vector<double> dist(static_cast<std::size_t>(n),
                                 std::numeric_limits<double>::infinity());
        dist[static_cast<std::size_t>(controller)] = 0.0;
        using Entry = std::pair<double, NodeId>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        queue.emplace(0.0, controller);
        while (!queue.empty()) {
            const auto [d, v] = queue.top();
            queue.pop();
            if (d > dist[static_cast<std::size_t>(v)]) continue;
            for (const Neighbor& nb : topology.neighbors(v)) {
                if (failed_links.count(nb.edge) || failed_nodes.count(nb.to)) continue;
                const double candidate = d + nb.weight;
                if (candidate < dist[static_cast<std::size_t>(nb.to)]) {
                    dist[static_cast<std::size_t>(nb.to)] = candidate;
                    queue.emplace(candidate, nb.to);
                }
            }
        }
        for (NodeId v = 0; v < n; ++v) {
            if (out.outcome[static_cast<std::size_t>(v)] == NodeOutcome::FailedElement) continue;
            const double d = dist[static_cast<std::size_t>(v)];
            if (!std::isfinite(d)) continue;
            if (d < out.delay[static_cast<std::size_t>(v)]) { // ascending controllers: ties keep lowest id
                out.delay[static_cast<std::size_t>(v)] = d;
                out.controller[static_cast<std::size_t>(v)] = controller;
                out.outcome[static_cast<std::size_t>(v)] = NodeOutcome::Assigned;
            }
        }
    }
    return out;
}

std::vector<FailureScenario> single_link_scenarios(const Topology& topology,
                                                   double disjoint_failure_prob) {
    std::vector<FailureScenario> scenarios;
    scenarios.reserve(topology.edges().size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(topology.edges().size()); ++e) {
        const Edge& edge = topology.edges()[static_cast<std::size_t>(e)];
        FailureScenario s;
        s.name = "link:" + topology.label(edge.u) + "-" + topology.label(edge.v);
        s.failed_links = {e};
        s.disjoint_failure_prob = disjoint_failure_prob;
        scenarios.push_back(std::move(s));
    }
    return scenarios;
}

std::vector<FailureScenario> single_node_scenarios(const Topology& topology,
                                                   double disjoint_failure_prob) {
    std::vector<FailureScenario> scenarios;
    scenarios.reserve(static_cast<std::size_t>(topology.node_count()));
    for (NodeId v = 0; v < topology.node_count(); ++v) {
        FailureScenario s;
        s.name = "node:" + topology.label(v);
        s.failed_nodes = {v};
        s.disjoint_failure_prob = disjoint_failure_prob;
        scenarios.push_back(std::move(s));
    }
    return scenarios;
}

std::vector<FailureScenario> load_scenarios_json(const Topology& topology,
                                                 std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    std::vector<FailureScenario> scenarios;
    try {
        for (const auto& item : doc.at("scenarios")) {
            FailureScenario s;
            s.name = item.value("name", "scenario " + std::to_string(scenarios.size()));
            if (item.contains("failed_nodes"))
                for (const auto& v : item.at("failed_nodes")) s.failed_nodes.push_back(v.get<NodeId>());
            if (item.contains("failed_links")) {
                for (const auto& pair : item.at("failed_links")) {
                    NodeId u = pair.at(0).get<NodeId>();
                    NodeId v = pair.at(1).get<NodeId>();
                    if (u > v) std::swap(u, v);
                    const auto& edges = topology.edges();
                    const auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
                        return e.u == u && e.v == v;
                    });
                    if (it == edges.end())
                        throw ValidationError("scenario JSON: no link between node " +
                                              std::to_string(u) + " and node " + std::to_string(v));
                    s.failed_links.push_back(static_cast<EdgeId>(it - edges.begin()));
                }
            }
            s.disjoint_failure_prob = item.value("qs", 0.0);
            validate_scenario(topology, s);
            scenarios.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    return scenarios;
}

TradeoffReport evaluate_tradeoff(const Topology& topology,
                                 const std::vector<Placement>& placements,
                                 const std::vector<FailureScenario>& scenarios) {
    if (placements.empty()) throw ValidationError("tradeoff evaluation needs at least one placement");
    for (const auto& scenario : scenarios) validate_scenario(topology, scenario);

    const DistanceMatrix dist = all_pairs_distances(topology);
    TradeoffReport report;
    report.scenario_count = static_cast<int>(scenarios.size());
    report.rows.reserve(placements.size());

    for (const Placement& placement : placements) {
        const Assignment assignment = assign_nearest(dist, placement);
        const ControlNetwork network = build_control_network(topology, placement, assignment);

        PlacementTradeoff row{.placement = placement,
                              .avg_latency = avg_latency(dist, placement),
                              .worst_latency = worst_latency(dist, placement),
                              .mean_failed_path_fraction = 0.0,
                              .mean_disconnected_fraction = 0.0,
                              .mean_post_failure_avg_latency = 0.0,
                              .dominated = false};

        const auto count = static_cast<int>(scenarios.size());
        std::vector<double> failed_fraction(scenarios.size(), 0.0);
        std::vector<double> disconnected_fraction(scenarios.size(), 0.0);
        std::vector<double> post_avg(scenarios.size(), 0.0);
        std::vector<char> post_avg_defined(scenarios.size(), 0);

#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            const FailureScenario& scenario = scenarios[static_cast<std::size_t>(i)];
            if (network.total_paths() > 0)
                failed_fraction[static_cast<std::size_t>(i)] =
                    expected_failed_paths(network, scenario) / network.total_paths();

            const PostFailureAssignment after = reroute_after_failure(topology, placement, scenario);
            int disconnected_switches = 0;
            int surviving_switches = 0;
            double delay_sum = 0.0;
            int assigned = 0;
            for (NodeId v = 0; v < topology.node_count(); ++v) {
                const auto outcome = after.outcome[static_cast<std::size_t>(v)];
                if (outcome == NodeOutcome::FailedElement) continue;
                if (!placement.contains(v)) {
                    ++surviving_switches;
                    if (outcome == NodeOutcome::Disconnected) ++disconnected_switches;
                }
                if (outcome == NodeOutcome::Assigned) {
                    delay_sum += after.delay[static_cast<std::size_t>(v)];
                    ++assigned;
                }
            }
            if (surviving_switches > 0)
                disconnected_fraction[static_cast<std::size_t>(i)] =
                    static_cast<double>(disconnected_switches) / surviving_switches;
            if (assigned > 0) {
                post_avg[static_cast<std::size_t>(i)] = delay_sum / assigned;
                post_avg_defined[static_cast<std::size_t>(i)] = 1;
            }
        }

        if (!scenarios.empty()) {
            double failed_sum = 0.0;
            double disconnected_sum = 0.0;
            double post_sum = 0.0;
            int post_terms = 0;
            for (std::size_t i = 0; i < scenarios.size(); ++i) {
                failed_sum += failed_fraction[i];
                disconnected_sum += disconnected_fraction[i];
                if (post_avg_defined[i]) {
                    post_sum += post_avg[i];
                    ++post_terms;
                }
            }
            row.mean_failed_path_fraction = failed_sum / static_cast<double>(scenarios.size());
            row.mean_disconnected_fraction = disconnected_sum / static_cast<double>(scenarios.size());
            row.mean_post_failure_avg_latency =
                post_terms > 0 ? post_sum / static_cast<double>(post_terms) : 0.0;
        }
        report.rows.push_back(std::move(row));
    }

    // A row is dominated when another placement is strictly better on every
    // latency and reliability measure.
    const auto strictly_better = [](const PlacementTradeoff& a, const PlacementTradeoff& b) {
        return a.avg_latency < b.avg_latency && a.worst_latency < b.worst_latency &&
               a.mean_failed_path_fraction < b.mean_failed_path_fraction &&
               a.mean_disconnected_fraction < b.mean_disconnected_fraction &&
               a.mean_post_failure_avg_latency < b.mean_post_failure_avg_latency;
    };
    for (auto& row : report.rows) {
        for (const auto& other : report.rows) {
            if (&other != &row && strictly_better(other, row)) {
                row.dominated = true;
                break;
            }
        }
    }
    return report;
}

std::vector<double> weighted_scores(const TradeoffReport& report, double latency_weight) {
    if (!(latency_weight >= 0.0 && latency_weight <= 1.0))
        throw ValidationError("latency weight must be in [0, 1]");
    double max_latency = 0.0;
    double max_reliability = 0.0;
    for (const auto& row : report.rows) {
        max_latency = std::max(max_latency, row.avg_latency);
        max_reliability = std::max(
            max_reliability, (row.mean_failed_path_fraction + row.mean_disconnected_fraction) / 2.0);
    }
    std::vector<double> scores;
    scores.reserve(report.rows.size());
    for (const auto& row : report.rows) {
        const double latency_part = max_latency > 0.0 ? row.avg_latency / max_latency : 0.0;
        const double reliability_part =
            max_reliability > 0.0
                ? (row.mean_failed_path_fraction + row.mean_disconnected_fraction) / 2.0 /
                      max_reliability
                : 0.0;
        scores.push_back(latency_weight * latency_part + (1.0 - latency_weight) * reliability_part);
    }
    return scores;
}

std::string to_tradeoff_json(const TradeoffReport& report, const Topology& topology,
                             const std::string& family, const std::vector<double>* scores) {
    nlohmann::ordered_json doc;
    doc["scenario_family"] = family;
    doc["scenario_count"] = report.scenario_count;
    doc["placements"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        nlohmann::ordered_json entry;
        entry["controllers"] = row.placement.ids();
        auto labels = nlohmann::ordered_json::array();
        for (const NodeId id : row.placement.ids()) labels.push_back(topology.label(id));
        entry["controller_labels"] = labels;
        entry["avg_latency"] = row.avg_latency;
        entry["worst_latency"] = row.worst_latency;
        entry["mean_failed_path_fraction"] = row.mean_failed_path_fraction;
        entry["mean_disconnected_fraction"] = row.mean_disconnected_fraction;
        entry["mean_post_failure_avg_latency"] = row.mean_post_failure_avg_latency;
        entry["dominated"] = row.dominated;
        if (scores != nullptr) entry["weighted_score"] = (*scores)[i];
        doc["placements"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string to_tradeoff_csv(const TradeoffReport& report, const Topology& topology,
                            const std::string& family) {
    std::string out = "family,controllers,controller_labels,avg_latency,worst_latency,"
                      "failed_path_fraction,disconnected_fraction,post_failure_avg_latency,"
                      "dominated\n";
    for (const auto& row : report.rows) {
        out += family;
        out += ',';
        for (std::size_t i = 0; i < row.placement.ids().size(); ++i) {
            if (i > 0) out += ';';
            out += std::to_string(row.placement.ids()[i]);
        }
        out += ',';
        for (std::size_t i = 0; i < row.placement.ids().size(); ++i) {
            if (i > 0) out += ';';
            out += topology.label(row.placement.ids()[i]);
        }
        out += ',';
        out += format_number(row.avg_latency);
        out += ',';
        out += format_number(row.worst_latency);
        out += ',';
        out += format_number(row.mean_failed_path_fraction);
        out += ',';
        out += format_number(row.mean_disconnected_fraction);
        out += ',';
        out += format_number(row.mean_post_failure_avg_latency);
        out += ',';
        out += row.dominated ? "true" : "false";
        out += '\n';
    }
    return out;
}

} // namespace ctrlplace
