#include "ctrlplace/distance_matrix.hpp"

#include "ctrlplace/errors.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace ctrlplace {

DistanceMatrix::DistanceMatrix(int n, std::vector<double> distances)
    : n_(n), d_(std::move(distances)) {
    if (n_ <= 0) throw ValidationError("distance matrix must have positive size");
    if (d_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
        throw ValidationError("distance matrix data size mismatch");
    for (int i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw ValidationError("distance matrix diagonal must be zero");
        for (int j = 0; j < n_; ++j) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw ValidationError("distance matrix entries must be finite and non-negative");
            if (v != (*this)(j, i)) throw ValidationError("distance matrix must be symmetric");
        }
    }
}

std::vector<double> single_source_distances(const Topology& topology, NodeId source) {
    const auto n = static_cast<std::size_t>(topology.node_count());
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    dist[static_cast<std::size_t>(source)] = 0.0;

    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (const Neighbor& nb : topology.neighbors(v)) {
            const double candidate = d + nb.weight;
            if (candidate < dist[static_cast<std::size_t>(nb.to)]) {
                dist[static_cast<std::size_t>(nb.to)] = candidate;
                queue.emplace(candidate, nb.to);
            }
        }
    }
    return dist;
}

DistanceMatrix all_pairs_distances(const Topology& topology) {
    if (!validate_connected(topology)) throw InfeasibleError("topology is disconnected");
    const int n = topology.node_count();
    std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < n; ++s) {
        const auto row = single_source_distances(topology, s);
        std::copy(row.begin(), row.end(), d.begin() + static_cast<std::size_t>(s) * n);
    }

    // Per-row Dijkstra sums can differ in the last ulp between d(i,j) and
    // d(j,i); mirror the upper triangle to keep the matrix exactly symmetric.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            d[static_cast<std::size_t>(j) * n + i] = d[static_cast<std::size_t>(i) * n + j];

    return DistanceMatrix(n, std::move(d));
}

} // namespace ctrlplace
