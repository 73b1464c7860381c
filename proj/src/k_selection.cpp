#include "ctrlplace/k_selection.hpp"

#include "ctrlplace/errors.hpp"
#include "ctrlplace/rng.hpp"
#include "ctrlplace/text.hpp"

namespace ctrlplace {

KCurve sweep_k(const DistanceMatrix& dist, int k_max, SolverId solver, std::uint64_t seed,
               const SweepOptions& options) {
    if (k_max < 1 || k_max > dist.size())
        throw ValidationError("k_max must be between 1 and the node count");
    if (solver == SolverId::SingleOptimal)
        throw ValidationError("sweep needs a solver parameterized by k; use brute force for exact sweeps");

    KCurve curve;
    curve.solver = solver;
    curve.seed = seed;
    curve.entries.reserve(static_cast<std::size_t>(k_max));

    for (int k = 1; k <= k_max; ++k) {
        const std::uint64_t sub_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
        KCurveEntry entry;
        entry.k = k;
        entry.solver = solver;
        switch (solver) {
        case SolverId::BruteForce:
            try {
                entry.value = solve_brute_force(dist, k, options.objective, options.budget)
                                  .objective_value;
            } catch (const InfeasibleError&) {
                if (!options.fallback_to_local) throw;
                entry.value = solve_local_search(dist, k, options.objective, sub_seed,
                                                 options.max_iters)
                                  .objective_value;
                entry.solver = SolverId::LocalSearch;
                entry.fell_back = true;
            }
            break;
        case SolverId::RandomBaseline:
            entry.value = solve_random_baseline(dist, k, options.objective, options.trials,
                                                sub_seed)
                              .mean_value;
            break;
        case SolverId::LocalSearch:
            entry.value = solve_local_search(dist, k, options.objective, sub_seed,
                                             options.max_iters)
                              .objective_value;
            break;
        case SolverId::KMedoids:
            entry.value = solve_kmedoids(dist, k, sub_seed, options.max_iters).objective_value;
            break;
        case SolverId::SingleOptimal:
            break; // rejected above
        }
        if (!curve.entries.empty())
            entry.decrease = curve.entries.back().value - entry.value;
        curve.entries.push_back(entry);
    }
    return curve;
}

KSelection select_optimal_k(const KCurve& curve, double tau) {
    if (curve.entries.empty()) throw ValidationError("cannot select k from an empty curve");
    if (!(tau > 0.0) || !(tau < 1.0)) throw ValidationError("tau must be in (0, 1)");

    const auto relative_improvement = [&](std::size_t j) {
        const double prev = curve.entries[j - 1].value;
        if (prev == 0.0) return 0.0;
        return (prev - curve.entries[j].value) / prev;
    };

    KSelection selection;
    selection.tau = tau;
    selection.rule = "smallest k whose remaining relative improvements all stay below tau";
    selection.chosen_k = curve.entries.back().k;
    for (std::size_t i = 0; i < curve.entries.size(); ++i) {
        bool plateau = true;
        for (std::size_t j = i + 1; j < curve.entries.size(); ++j) {
            if (relative_improvement(j) >= tau) {
                plateau = false;
                break;
            }
        }
        if (plateau) {
            selection.chosen_k = curve.entries[i].k;
            break;
        }
    }
    return selection;
}

std::string to_curve_csv(const KCurve& curve) {
    std::string out = "k,value,decrease\n";
    for (const auto& entry : curve.entries) {
        out += std::to_string(entry.k);
        out += ',';
        out += format_number(entry.value);
        out += ',';
        if (entry.decrease) out += format_number(*entry.decrease);
        out += '\n';
    }
    return out;
}

} // namespace ctrlplace
