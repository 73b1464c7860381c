#include "ctrlplace/solvers.hpp"

#include "ctrlplace/errors.hpp"
#include "ctrlplace/rng.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctrlplace {

namespace {

int worker_count() {
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

void validate_k(const DistanceMatrix& dist, int k) {
    if (k < 1) throw ValidationError("k must be at least 1");
    if (k > dist.size())
        throw ValidationError("k = " + std::to_string(k) + " exceeds the node count " +
                              std::to_string(dist.size()));
}

void validate_objective(const Objective& objective) {
    if (objective.kind == ObjectiveKind::CoverageWithinBound && objective.bound < 0.0)
        throw ValidationError("coverage bound must be non-negative");
}

/// Total preference order used by every solver: smaller primary wins, then
/// smaller secondary, then the lexicographically smaller controller set.
/// For latency objectives primary is the value; for coverage primary is the
/// negated covered count and secondary the average latency.
struct Score {
    double primary = 0.0;
    double secondary = 0.0;
};

bool score_less(const Score& a, const Score& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    return a.secondary < b.secondary;
}

bool candidate_beats(const Score& a, const std::vector<NodeId>& sites_a, const Score& b,
                     const std::vector<NodeId>& sites_b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    return sites_a < sites_b;
}

Score score_candidate(const DistanceMatrix& dist, std::span<const NodeId> sites,
                      const Objective& objective) {
    const int n = dist.size();
    switch (objective.kind) {
    case ObjectiveKind::AverageLatency: {
        double total = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double best = dist(v, sites.front());
            for (const NodeId s : sites) best = std::min(best, dist(v, s));
            total += best;
        }
        return {total / static_cast<double>(n), 0.0};
    }
    case ObjectiveKind::WorstLatency: {
        double worst = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double best = dist(v, sites.front());
            for (const NodeId s : sites) best = std::min(best, dist(v, s));
            worst = std::max(worst, best);
        }
        return {worst, 0.0};
    }
    case ObjectiveKind::CoverageWithinBound: {
        int covered = 0;
        double total = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double best = dist(v, sites.front());
            for (const NodeId s : sites) best = std::min(best, dist(v, s));
            total += best;
            if (best <= objective.bound) ++covered;
        }
        return {-static_cast<double>(covered), total / static_cast<double>(n)};
    }
    }
    throw ValidationError("unknown objective kind");
}

SolveResult make_result(const DistanceMatrix& dist, std::vector<NodeId> sites,
                        const Objective& objective, SolverId solver, std::uint64_t evaluations,
                        int iterations, bool converged) {
    Placement placement(std::move(sites));
    SolveResult result{
        .placement = placement,
        .objective = objective,
        .objective_value = evaluate_objective(dist, placement, objective),
        .total_delay = 0.0,
        .assignment = assign_nearest(dist, placement),
        .solver = solver,
        .evaluations = evaluations,
        .iterations = iterations,
        .converged = converged,
        .clusters = {},
    };
    result.total_delay = std::accumulate(result.assignment.delay.begin(),
                                         result.assignment.delay.end(), 0.0);
    return result;
}

// ---- k-subset enumeration in lexicographic order ---------------------------

/// C(n, k), saturating at cap + 1.
std::uint64_t choose_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<NodeId> unrank_combination(int n, int k, std::uint64_t rank) {
    std::vector<NodeId> combo(static_cast<std::size_t>(k));
    NodeId v = 0;
    for (int i = 0; i < k; ++i) {
        for (;; ++v) {
            const std::uint64_t below = choose_capped(n - 1 - v, k - 1 - i,
                                                      std::numeric_limits<std::uint64_t>::max() - 1);
            if (rank < below) break;
            rank -= below;
        }
        combo[static_cast<std::size_t>(i)] = v++;
    }
    return combo;
}

bool next_combination(std::vector<NodeId>& combo, int n) {
    const int k = static_cast<int>(combo.size());
    for (int i = k - 1; i >= 0; --i) {
        if (combo[static_cast<std::size_t>(i)] < n - k + i) {
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

double evaluate_objective(const DistanceMatrix& dist, const Placement& placement,
                          const Objective& objective) {
    validate_objective(objective);
    switch (objective.kind) {
    case ObjectiveKind::AverageLatency: return avg_latency(dist, placement);
    case ObjectiveKind::WorstLatency: return worst_latency(dist, placement);
    case ObjectiveKind::CoverageWithinBound:
        return static_cast<double>(coverage_within_bound(dist, placement, objective.bound).size());
    }
    throw ValidationError("unknown objective kind");
}

std::string solver_name(SolverId id) {
    switch (id) {
    case SolverId::SingleOptimal: return "single";
    case SolverId::BruteForce: return "brute";
    case SolverId::RandomBaseline: return "random";
    case SolverId::LocalSearch: return "local";
    case SolverId::KMedoids: return "kmedoids";
    }
    return "unknown";
}

SolveResult solve_single_optimal(const DistanceMatrix& dist) {
    const int n = dist.size();
    NodeId best = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v) {
        double total = 0.0;
        for (NodeId u = 0; u < n; ++u) total += dist(u, v);
        if (total < best_total) {
            best_total = total;
            best = v;
        }
    }
    return make_result(dist, {best}, Objective::average(), SolverId::SingleOptimal,
                       static_cast<std::uint64_t>(n), 1, true);
}

SolveResult solve_brute_force(const DistanceMatrix& dist, int k, const Objective& objective,
                              std::uint64_t budget) {
    validate_k(dist, k);
    validate_objective(objective);
    if (budget < 1) throw ValidationError("evaluation budget must be at least 1");

    const int n = dist.size();
    const std::uint64_t total = choose_capped(n, k, budget);
    if (total > budget)
        throw InfeasibleError("brute force over C(" + std::to_string(n) + "," + std::to_string(k) +
                              ") placements exceeds the evaluation budget of " +
                              std::to_string(budget));

    struct ChunkBest {
        Score score;
        std::vector<NodeId> combo;
        bool valid = false;
    };
    const int chunk_count = worker_count();
    std::vector<ChunkBest> bests(static_cast<std::size_t>(chunk_count));

    // Each chunk scans a contiguous rank range. The winner is the argmin of a
    // total order, so any partition of the ranks yields the same result.
    const std::uint64_t chunk_size = total / static_cast<std::uint64_t>(chunk_count);
    const std::uint64_t chunk_rem = total % static_cast<std::uint64_t>(chunk_count);
#pragma omp parallel for schedule(static, 1)
    for (int c = 0; c < chunk_count; ++c) {
        const auto uc = static_cast<std::uint64_t>(c);
        const std::uint64_t lo = chunk_size * uc + std::min(uc, chunk_rem);
        const std::uint64_t hi = lo + chunk_size + (uc < chunk_rem ? 1 : 0);
        if (lo >= hi) continue;
        ChunkBest local;
        auto combo = unrank_combination(n, k, lo);
        for (std::uint64_t rank = lo; rank < hi; ++rank) {
            const Score score = score_candidate(dist, combo, objective);
            if (!local.valid || candidate_beats(score, combo, local.score, local.combo)) {
                local.score = score;
                local.combo = combo;
                local.valid = true;
            }
            next_combination(combo, n);
        }
        bests[static_cast<std::size_t>(c)] = std::move(local);
    }

    const ChunkBest* winner = nullptr;
    for (const auto& chunk : bests) {
        if (!chunk.valid) continue;
        if (winner == nullptr ||
            candidate_beats(chunk.score, chunk.combo, winner->score, winner->combo))
            winner = &chunk;
    }
    assert(winner != nullptr);
    return make_result(dist, winner->combo, objective, SolverId::BruteForce, total, 1, true);
}

RandomBaselineResult solve_random_baseline(const DistanceMatrix& dist, int k,
                                           const Objective& objective, int trials,
                                           std::uint64_t seed) {
    validate_k(dist, k);
    validate_objective(objective);
    if (trials < 1) throw ValidationError("trials must be at least 1");

    Rng rng(seed);
    RandomBaselineResult out;
    out.trials.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        auto sites = rng.sample_distinct(k, dist.size());
        out.trials.push_back(
            make_result(dist, std::move(sites), objective, SolverId::RandomBaseline, 1, 1, true));
    }

    double sum = 0.0;
    out.min_value = out.trials.front().objective_value;
    out.max_value = out.min_value;
    out.best_trial = 0;
    for (int t = 0; t < trials; ++t) {
        const double value = out.trials[static_cast<std::size_t>(t)].objective_value;
        sum += value;
        out.min_value = std::min(out.min_value, value);
        out.max_value = std::max(out.max_value, value);
        const double best_so_far = out.trials[static_cast<std::size_t>(out.best_trial)].objective_value;
        const bool improves = objective.maximizing() ? value > best_so_far : value < best_so_far;
        if (improves) out.best_trial = t;
    }
    out.mean_value = sum / static_cast<double>(trials);
    return out;
}

namespace {

struct DescentOutcome {
    std::vector<NodeId> sites;
    Score score;
    int iterations = 0;
    bool converged = false;
    std::uint64_t evaluations = 0;
};

DescentOutcome swap_descent(const DistanceMatrix& dist, std::vector<NodeId> current,
                            const Objective& objective, int max_iters) {
    const int n = dist.size();
    const int k = static_cast<int>(current.size());
    DescentOutcome outcome;
    outcome.score = score_candidate(dist, current, objective);
    outcome.evaluations = 1;

    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    for (const NodeId s : current) chosen[static_cast<std::size_t>(s)] = 1;

    std::vector<NodeId> candidate(current.size());
    while (outcome.iterations < max_iters) {
        bool found = false;
        Score best_score;
        std::vector<NodeId> best_combo;
        for (int out_pos = 0; out_pos < k; ++out_pos) {
            for (NodeId in_node = 0; in_node < n; ++in_node) {
                if (chosen[static_cast<std::size_t>(in_node)]) continue;
                candidate = current;
                candidate[static_cast<std::size_t>(out_pos)] = in_node;
                std::sort(candidate.begin(), candidate.end());
                const Score score = score_candidate(dist, candidate, objective);
                ++outcome.evaluations;
                if (!score_less(score, outcome.score)) continue;
                if (!found || candidate_beats(score, candidate, best_score, best_combo)) {
                    best_score = score;
                    best_combo = candidate;
                    found = true;
                }
            }
        }
        if (!found) {
            outcome.converged = true;
            break;
        }
        for (const NodeId s : current) chosen[static_cast<std::size_t>(s)] = 0;
        current = best_combo;
        for (const NodeId s : current) chosen[static_cast<std::size_t>(s)] = 1;
        outcome.score = best_score;
        ++outcome.iterations;
    }
    outcome.sites = std::move(current);
    return outcome;
}

// Swap descent can strand in a local optimum; the unseeded entry point runs
// several restarts and keeps the best converged result.
constexpr int kLocalSearchRestarts = 8;

} // namespace

SolveResult solve_local_search(const DistanceMatrix& dist, int k, const Objective& objective,
                               std::uint64_t seed, int max_iters,
                               const std::optional<Placement>& start) {
    validate_k(dist, k);
    validate_objective(objective);
    if (max_iters < 1) throw ValidationError("max_iters must be at least 1");

    const int n = dist.size();
    if (start) {
        if (start->k() != k) throw ValidationError("start placement size differs from k");
        if (start->ids().back() >= n) throw ValidationError("start placement out of range");
        const DescentOutcome outcome = swap_descent(dist, start->ids(), objective, max_iters);
        return make_result(dist, outcome.sites, objective, SolverId::LocalSearch,
                           outcome.evaluations, outcome.iterations, outcome.converged);
    }

    Rng rng(seed);
    const int restarts = k == n ? 1 : kLocalSearchRestarts;
    std::optional<DescentOutcome> best;
    std::uint64_t evaluations = 0;
    for (int r = 0; r < restarts; ++r) {
        DescentOutcome outcome = swap_descent(dist, rng.sample_distinct(k, n), objective, max_iters);
        evaluations += outcome.evaluations;
        if (!best || candidate_beats(outcome.score, outcome.sites, best->score, best->sites))
            best = std::move(outcome);
    }
    return make_result(dist, best->sites, objective, SolverId::LocalSearch, evaluations,
                       best->iterations, best->converged);
}

SolveResult solve_kmedoids(const DistanceMatrix& dist, int k, std::uint64_t seed, int max_iters) {
    validate_k(dist, k);
    if (max_iters < 1) throw ValidationError("max_iters must be at least 1");

    const int n = dist.size();
    Rng rng(seed);

    // Greedy farthest-point seeding from a seeded start node.
    std::vector<NodeId> medoids{static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)))};
    std::vector<char> is_medoid(static_cast<std::size_t>(n), 0);
    is_medoid[static_cast<std::size_t>(medoids.front())] = 1;
    while (static_cast<int>(medoids.size()) < k) {
        NodeId farthest = -1;
        double farthest_delay = -1.0;
        for (NodeId v = 0; v < n; ++v) {
            if (is_medoid[static_cast<std::size_t>(v)]) continue;
            double nearest = dist(v, medoids.front());
            for (const NodeId m : medoids) nearest = std::min(nearest, dist(v, m));
            if (nearest > farthest_delay) {
                farthest_delay = nearest;
                farthest = v;
            }
        }
        medoids.push_back(farthest);
        is_medoid[static_cast<std::size_t>(farthest)] = 1;
    }
    std::sort(medoids.begin(), medoids.end());

    std::vector<int> owner(static_cast<std::size_t>(n));   // medoid index per node
    std::vector<double> delay(static_cast<std::size_t>(n));
    const auto assign = [&] {
        for (NodeId v = 0; v < n; ++v) {
            int best = 0;
            double best_delay = dist(v, medoids.front());
            for (int m = 1; m < k; ++m) {
                const double d = dist(v, medoids[static_cast<std::size_t>(m)]);
                if (d < best_delay) { // sorted medoids: ties keep the lowest id
                    best_delay = d;
                    best = m;
                }
            }
            owner[static_cast<std::size_t>(v)] = best;
            delay[static_cast<std::size_t>(v)] = best_delay;
        }
    };

    int iterations = 0;
    bool converged = false;
    std::uint64_t evaluations = 0;
    while (iterations < max_iters) {
        ++iterations;
        assign();
        evaluations += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k);

        // An empty cluster can only appear when distinct nodes sit at zero
        // distance; reseed its medoid to the worst-served node.
        std::vector<int> population(static_cast<std::size_t>(k), 0);
        for (NodeId v = 0; v < n; ++v) ++population[static_cast<std::size_t>(owner[v])];
        for (int m = 0; m < k; ++m) {
            if (population[static_cast<std::size_t>(m)] > 0) continue;
            NodeId worst = -1;
            double worst_delay = -1.0;
            for (NodeId v = 0; v < n; ++v) {
                if (std::find(medoids.begin(), medoids.end(), v) != medoids.end()) continue;
                if (delay[static_cast<std::size_t>(v)] > worst_delay) {
                    worst_delay = delay[static_cast<std::size_t>(v)];
                    worst = v;
                }
            }
            if (worst < 0) break;
            medoids[static_cast<std::size_t>(m)] = worst;
            std::sort(medoids.begin(), medoids.end());
            assign();
            for (int& count : population) count = 0;
            for (NodeId v = 0; v < n; ++v) ++population[static_cast<std::size_t>(owner[v])];
        }

        // Medoid update: each cluster moves to the member minimizing the
        // summed intra-cluster delay, lowest id on ties.
        std::vector<NodeId> updated(medoids);
        for (int m = 0; m < k; ++m) {
            NodeId best_member = -1;
            double best_total = std::numeric_limits<double>::infinity();
            for (NodeId candidate = 0; candidate < n; ++candidate) {
                if (owner[static_cast<std::size_t>(candidate)] != m) continue;
                double total = 0.0;
                for (NodeId v = 0; v < n; ++v) {
                    if (owner[static_cast<std::size_t>(v)] == m) total += dist(candidate, v);
                }
                ++evaluations;
                if (total < best_total) {
                    best_total = total;
                    best_member = candidate;
                }
            }
            updated[static_cast<std::size_t>(m)] = best_member;
        }
        std::sort(updated.begin(), updated.end());
        if (updated == medoids) {
            converged = true;
            break;
        }
        medoids = std::move(updated);
    }
    assign();

    SolveResult result = make_result(dist, medoids, Objective::average(), SolverId::KMedoids,
                                     evaluations, iterations, converged);
    result.clusters.reserve(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
        ClusterReport cluster;
        cluster.controller = medoids[static_cast<std::size_t>(m)];
        for (NodeId v = 0; v < n; ++v) {
            if (owner[static_cast<std::size_t>(v)] != m || v == cluster.controller) continue;
            cluster.members.push_back(v);
            cluster.total_delay += dist(v, cluster.controller);
        }
        result.clusters.push_back(std::move(cluster));
    }
    return result;
}

} // namespace ctrlplace
