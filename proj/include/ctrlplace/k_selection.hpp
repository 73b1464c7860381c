#pragma once

#include "ctrlplace/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctrlplace {

struct KCurveEntry {
    int k = 0;
    double value = 0.0;
    std::optional<double> decrease; // value[k-1] - value[k]; absent for the first entry
    SolverId solver = SolverId::BruteForce;
    bool fell_back = false; // true when the budget forced a heuristic at this k
};

/// Objective value as a function of the controller count, k = 1..k_max.
struct KCurve {
    std::vector<KCurveEntry> entries;
    SolverId solver = SolverId::BruteForce;
    std::uint64_t seed = 0;
};

struct SweepOptions {
    Objective objective = Objective::average();
    int trials = 100;    // random solver: value is the mean over trials
    int max_iters = 1000;
    std::uint64_t budget = 10'000'000;
    bool fallback_to_local = false; // swap search when brute force overruns the budget
};

/// Runs the named solver once per k and assembles the curve. Seeded solvers
/// draw from a per-k sub-seed derived from `seed`. When brute force exceeds
/// its budget at some k the sweep either throws or, with fallback enabled,
/// substitutes swap search for that k and marks the entry.
KCurve sweep_k(const DistanceMatrix& dist, int k_max, SolverId solver, std::uint64_t seed,
               const SweepOptions& options = {});

struct KSelection {
    int chosen_k = 1;
    double tau = 0.0;
    std::string rule;
};

/// Diminishing-returns choice of the controller count: the smallest k after
/// which every later step's relative improvement (value[j-1] - value[j]) /
/// value[j-1] stays below tau (0/0 counts as 0). Falls back to the largest k
/// if no entry qualifies.
KSelection select_optimal_k(const KCurve& curve, double tau);

/// CSV rendering with columns "k,value,decrease"; the first row's decrease
/// cell is empty.
std::string to_curve_csv(const KCurve& curve);

} // namespace ctrlplace
