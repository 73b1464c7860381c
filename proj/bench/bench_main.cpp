// Timing comparison between the parallel kernels and the serial reference
// implementations: all-pairs shortest paths and exhaustive placement search.
// Prints one table row per instance; not a correctness gate.

#include "ctrlplace/distance_matrix.hpp"
#include "ctrlplace/generator.hpp"
#include "ctrlplace/solvers.hpp"
#include "reference.hpp"

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ctrlplace;

namespace {

double time_ms(const auto& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

Topology clustered(int per_cluster, int clusters, std::uint64_t seed) {
    ClusteredTopologySpec spec;
    spec.cluster_sizes.assign(static_cast<std::size_t>(clusters), per_cluster);
    spec.intra_density = 0.3;
    spec.seed = seed;
    return generate_clustered(spec).topology;
}

} // namespace

int main() {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("threads: %d\n\n", threads);

    std::printf("%-34s %12s %12s %8s\n", "kernel / instance", "parallel ms", "serial ms",
                "speedup");
    std::printf("%-34s %12s %12s %8s\n", "----------------------------------", "-----------",
                "-----------", "-------");

    for (const int n : {120, 240, 480}) {
        const Topology t = clustered(n / 4, 4, 7);
        double parallel_ms = 0.0;
        double serial_ms = 0.0;
        // Warm-up plus best-of-3 to settle allocator and cache effects.
        for (int rep = 0; rep < 3; ++rep) {
            const double p = time_ms([&] { all_pairs_distances(t); });
            const double s = time_ms([&] { ref::apsp_relaxation(t); });
            parallel_ms = rep == 0 ? p : std::min(parallel_ms, p);
            serial_ms = rep == 0 ? s : std::min(serial_ms, s);
        }
        const std::string label = "apsp n=" + std::to_string(t.node_count());
        std::printf("%-34s %12.2f %12.2f %7.1fx\n", label.c_str(), parallel_ms, serial_ms,
                    serial_ms / parallel_ms);
    }

    for (const auto& [n, k] : {std::pair{28, 4}, std::pair{36, 4}, std::pair{40, 4}}) {
        const Topology t = clustered(n / 4, 4, 11);
        const DistanceMatrix d = all_pairs_distances(t);
        double parallel_ms = 0.0;
        double serial_ms = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const double p = time_ms([&] {
                solve_brute_force(d, k, Objective::average(), 100'000'000ULL);
            });
            const double s =
                time_ms([&] { ref::enumerate_best(d, k, ref::RefObjective::Average, 0.0); });
            parallel_ms = rep == 0 ? p : std::min(parallel_ms, p);
            serial_ms = rep == 0 ? s : std::min(serial_ms, s);
        }
        const std::string label =
            "exhaustive n=" + std::to_string(t.node_count()) + " k=" + std::to_string(k);
        std::printf("%-34s %12.2f %12.2f %7.1fx\n", label.c_str(), parallel_ms, serial_ms,
                    serial_ms / parallel_ms);
    }
    return 0;
}
