#include "reference.hpp"

#include "ctrlplace/rng.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace ctrlplace::ref {

std::vector<std::vector<double>> apsp_relaxation(const Topology& topology) {
    const int n = topology.node_count();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int source = 0; source < n; ++source) {
        auto& row = d[static_cast<std::size_t>(source)];
        row[static_cast<std::size_t>(source)] = 0.0;
        for (int round = 1; round < n; ++round) {
            bool changed = false;
            for (const Edge& e : topology.edges()) {
                const auto u = static_cast<std::size_t>(e.u);
                const auto v = static_cast<std::size_t>(e.v);
                if (row[u] + e.weight < row[v]) {
                    row[v] = row[u] + e.weight;
                    changed = true;
                }
                if (row[v] + e.weight < row[u]) {
                    row[u] = row[v] + e.weight;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }
    return d;
}

double naive_avg_latency(const DistanceMatrix& dist, const std::vector<NodeId>& controllers) {
    double sum = 0.0;
    for (NodeId v = 0; v < dist.size(); ++v) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const NodeId s : controllers) nearest = std::min(nearest, dist(v, s));
        sum += nearest;
    }
    return sum / static_cast<double>(dist.size());
}

double naive_worst_latency(const DistanceMatrix& dist, const std::vector<NodeId>& controllers) {
    double worst = 0.0;
    for (NodeId v = 0; v < dist.size(); ++v) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const NodeId s : controllers) nearest = std::min(nearest, dist(v, s));
        worst = std::max(worst, nearest);
    }
    return worst;
}

std::vector<NodeId> naive_covered_nodes(const DistanceMatrix& dist,
                                        const std::vector<NodeId>& controllers, double bound) {
    std::vector<NodeId> covered;
    for (NodeId v = 0; v < dist.size(); ++v) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const NodeId s : controllers) nearest = std::min(nearest, dist(v, s));
        if (nearest <= bound) covered.push_back(v);
    }
    return covered;
}

namespace {

struct RefScore {
    double first;
    double second;
};

RefScore ref_score(const DistanceMatrix& dist, const std::vector<NodeId>& sites,
                   RefObjective objective, double bound) {
    switch (objective) {
    case RefObjective::Average: return {naive_avg_latency(dist, sites), 0.0};
    case RefObjective::Worst: return {naive_worst_latency(dist, sites), 0.0};
    case RefObjective::Coverage:
        return {-static_cast<double>(naive_covered_nodes(dist, sites, bound).size()),
                naive_avg_latency(dist, sites)};
    }
    throw std::logic_error("unknown reference objective");
}

struct SearchState {
    RefBest best;
    RefScore best_score{0.0, 0.0};
    bool have_best = false;
};

void descend(const DistanceMatrix& dist, int k, RefObjective objective, double bound,
             NodeId next_site, std::vector<NodeId>& partial, SearchState& state) {
    if (static_cast<int>(partial.size()) == k) {
        const RefScore score = ref_score(dist, partial, objective, bound);
        const bool wins = !state.have_best || score.first < state.best_score.first ||
                          (score.first == state.best_score.first &&
                           score.second < state.best_score.second);
        if (wins) { // visiting order is lexicographic, so the first optimum sticks
            state.best.placement = partial;
            state.best_score = score;
            state.have_best = true;
        }
        return;
    }
    for (NodeId v = next_site; v < dist.size(); ++v) {
        partial.push_back(v);
        descend(dist, k, objective, bound, v + 1, partial, state);
        partial.pop_back();
    }
}

} // namespace

RefBest enumerate_best(const DistanceMatrix& dist, int k, RefObjective objective, double bound) {
    if (k < 1 || k > dist.size()) throw std::invalid_argument("reference enumerator: bad k");
    SearchState state;
    std::vector<NodeId> partial;
    descend(dist, k, objective, bound, 0, partial, state);
    state.best.value = objective == RefObjective::Coverage ? -state.best_score.first
                                                           : state.best_score.first;
    return state.best;
}

namespace {

bool path_touches(const ControlPath& path, const std::unordered_set<NodeId>& nodes,
                  const std::unordered_set<EdgeId>& links) {
    for (const NodeId v : path.nodes)
        if (nodes.count(v)) return true;
    for (const EdgeId e : path.links)
        if (links.count(e)) return true;
    return false;
}

} // namespace

double exhaustive_expected_failed_paths(const ControlNetwork& network,
                                        const FailureScenario& scenario) {
    const std::unordered_set<NodeId> nodes(scenario.failed_nodes.begin(),
                                           scenario.failed_nodes.end());
    const std::unordered_set<EdgeId> links(scenario.failed_links.begin(),
                                           scenario.failed_links.end());
    int hit = 0;
    int disjoint = 0;
    for (int i = 0; i < network.total_paths(); ++i)
        (path_touches(network.path(i), nodes, links) ? hit : disjoint)++;

    if (disjoint > 20)
        throw std::invalid_argument("exhaustive expectation limited to 20 disjoint paths");
    const double q = scenario.disjoint_failure_prob;
    double expectation = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << disjoint); ++mask) {
        const int extra = static_cast<int>(__builtin_popcountll(mask));
        double probability = 1.0;
        for (int b = 0; b < disjoint; ++b)
            probability *= (mask >> b) & 1 ? q : 1.0 - q;
        expectation += probability * static_cast<double>(hit + extra);
    }
    return expectation;
}

double sampled_expected_failed_paths(const ControlNetwork& network,
                                     const FailureScenario& scenario, int samples,
                                     std::uint64_t seed) {
    const std::unordered_set<NodeId> nodes(scenario.failed_nodes.begin(),
                                           scenario.failed_nodes.end());
    const std::unordered_set<EdgeId> links(scenario.failed_links.begin(),
                                           scenario.failed_links.end());
    int hit = 0;
    int disjoint = 0;
    for (int i = 0; i < network.total_paths(); ++i)
        (path_touches(network.path(i), nodes, links) ? hit : disjoint)++;

    Rng rng(seed);
    std::uint64_t failed = 0;
    for (int s = 0; s < samples; ++s)
        for (int p = 0; p < disjoint; ++p)
            if (rng.bernoulli(scenario.disjoint_failure_prob)) ++failed;
    return static_cast<double>(hit) + static_cast<double>(failed) / static_cast<double>(samples);
}

std::vector<char> can_reach_any(const Topology& topology, const std::vector<NodeId>& targets,
                                const FailureScenario& scenario) {
    const std::unordered_set<NodeId> failed_nodes(scenario.failed_nodes.begin(),
                                                  scenario.failed_nodes.end());
    const std::unordered_set<EdgeId> failed_links(scenario.failed_links.begin(),
                                                  scenario.failed_links.end());
    std::vector<char> reached(static_cast<std::size_t>(topology.node_count()), 0);
    std::vector<NodeId> stack;
    for (const NodeId t : targets) {
        if (failed_nodes.count(t) || reached[static_cast<std::size_t>(t)]) continue;
        reached[static_cast<std::size_t>(t)] = 1;
        stack.push_back(t);
    }
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (const Neighbor& nb : topology.neighbors(v)) {
            if (failed_links.count(nb.edge) || failed_nodes.count(nb.to)) continue;
            if (!reached[static_cast<std::size_t>(nb.to)]) {
                reached[static_cast<std::size_t>(nb.to)] = 1;
                stack.push_back(nb.to);
            }
        }
    }
    return reached;
}

} // namespace ctrlplace::ref
