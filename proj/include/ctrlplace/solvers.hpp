#pragma once

#include "ctrlplace/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctrlplace {

enum class ObjectiveKind { AverageLatency, WorstLatency, CoverageWithinBound };

/// Placement objective. Average and worst latency are minimized; coverage
/// within a delay bound is maximized. Every solver resolves ties the same
/// way: equal coverage counts fall back to smaller average latency, and any
/// remaining tie goes to the lexicographically smallest controller set.
struct Objective {
    ObjectiveKind kind = ObjectiveKind::AverageLatency;
    double bound = 0.0; // CoverageWithinBound only

    static Objective average() { return {ObjectiveKind::AverageLatency, 0.0}; }
    static Objective worst() { return {ObjectiveKind::WorstLatency, 0.0}; }
    static Objective coverage(double bound) { return {ObjectiveKind::CoverageWithinBound, bound}; }

    bool maximizing() const { return kind == ObjectiveKind::CoverageWithinBound; }
};

/// Average latency, worst latency, or the number of covered nodes.
double evaluate_objective(const DistanceMatrix& dist, const Placement& placement,
                          const Objective& objective);

enum class SolverId { SingleOptimal, BruteForce, RandomBaseline, LocalSearch, KMedoids };

std::string solver_name(SolverId id);

/// One cluster of a clustering solve: the controller, the member switches it
/// manages, and their summed delay to it.
struct ClusterReport {
    NodeId controller = 0;
    std::vector<NodeId> members; // excludes the controller itself
    double total_delay = 0.0;
};

struct SolveResult {
    Placement placement;
    Objective objective;
    double objective_value = 0.0;
    double total_delay = 0.0; // sum of per-node nearest-controller delays
    Assignment assignment;
    SolverId solver = SolverId::BruteForce;
    std::uint64_t evaluations = 0;
    int iterations = 0;
    bool converged = true;
    std::vector<ClusterReport> clusters; // clustering solver only
};

/// The best single controller site: the node minimizing the total delay to
/// every other node, lowest id on ties.
SolveResult solve_single_optimal(const DistanceMatrix& dist);

/// Exhaustive search over all k-subsets. Globally optimal; among optima the
/// lexicographically smallest set wins. Enumeration runs in parallel over
/// rank ranges without affecting the result. Throws InfeasibleError when
/// C(n,k) exceeds `budget`.
SolveResult solve_brute_force(const DistanceMatrix& dist, int k, const Objective& objective,
                              std::uint64_t budget = 10'000'000);

struct RandomBaselineResult {
    std::vector<SolveResult> trials;
    double mean_value = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    int best_trial = 0; // first trial achieving the best value for the objective
};

/// Places k controllers on uniformly sampled distinct nodes, `trials` times,
/// scoring each sample. Reproducible for a fixed seed.
RandomBaselineResult solve_random_baseline(const DistanceMatrix& dist, int k,
                                           const Objective& objective, int trials,
                                           std::uint64_t seed);

/// Best-improvement swap descent from a seeded random placement (or from
/// `start` when given): repeatedly exchanges one chosen controller for one
/// unchosen node as long as the objective improves. A converged result has
/// no improving single swap.
SolveResult solve_local_search(const DistanceMatrix& dist, int k, const Objective& objective,
                               std::uint64_t seed, int max_iters = 1000,
                               const std::optional<Placement>& start = std::nullopt);

/// Latency-space k-medoids: greedy farthest-point seeding from a seeded
/// start node, then alternating nearest-medoid assignment and per-cluster
/// medoid updates until stable. Returns the medoids as the placement plus
/// per-cluster membership and total delay.
SolveResult solve_kmedoids(const DistanceMatrix& dist, int k, std::uint64_t seed,
                           int max_iters = 100);

} // namespace ctrlplace
