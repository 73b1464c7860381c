#pragma once

// Serial reference implementations, independent of the main library's code
// paths. Tests use them as oracles; the benchmark uses them as the baseline.
// Not part of the shipped library surface.

#include "ctrlplace/distance_matrix.hpp"
#include "ctrlplace/reliability.hpp"
#include "ctrlplace/topology.hpp"

#include <cstdint>
#include <vector>

namespace ctrlplace::ref {

/// All-pairs shortest paths by repeated edge relaxation (n-1 rounds per
/// source). Infinity marks unreachable pairs.
std::vector<std::vector<double>> apsp_relaxation(const Topology& topology);

/// Per-node minimum over controllers, then mean / max / within-bound count.
double naive_avg_latency(const DistanceMatrix& dist, const std::vector<NodeId>& controllers);
double naive_worst_latency(const DistanceMatrix& dist, const std::vector<NodeId>& controllers);
std::vector<NodeId> naive_covered_nodes(const DistanceMatrix& dist,
                                        const std::vector<NodeId>& controllers, double bound);

enum class RefObjective { Average, Worst, Coverage };

struct RefBest {
    std::vector<NodeId> placement;
    double value = 0.0;
};

/// Exhaustive k-subset search by recursive descent, with its own scoring
/// loops. Tie order: objective value, then average latency for coverage,
/// then the lexicographically smallest set (the first one visited).
RefBest enumerate_best(const DistanceMatrix& dist, int k, RefObjective objective, double bound);

/// Expected failed control paths by summing over every subset of the
/// element-disjoint paths. Exponential; requires at most 20 disjoint paths.
double exhaustive_expected_failed_paths(const ControlNetwork& network,
                                        const FailureScenario& scenario);

/// Monte Carlo estimate of the same expectation, fixed seed.
double sampled_expected_failed_paths(const ControlNetwork& network,
                                     const FailureScenario& scenario, int samples,
                                     std::uint64_t seed);

/// True for every node that can reach at least one of `targets` in the graph
/// with the scenario's elements removed. Unweighted BFS.
std::vector<char> can_reach_any(const Topology& topology, const std::vector<NodeId>& targets,
                                const FailureScenario& scenario);

} // namespace ctrlplace::ref
