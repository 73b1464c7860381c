#include "ctrlplace/generator.hpp"

#include "ctrlplace/errors.hpp"
#include "ctrlplace/rng.hpp"

#include <cmath>
#include <string>

namespace ctrlplace {

namespace {

struct IntRange {
    std::int64_t lo;
    std::int64_t hi;
};

IntRange integer_range(const WeightRange& range, const char* which) {
    const auto lo = static_cast<std::int64_t>(std::ceil(range.min));
    const auto hi = static_cast<std::int64_t>(std::floor(range.max));
    if (range.min > range.max || lo > hi)
        throw ValidationError(std::string(which) + " weight range contains no integer weight");
    if (lo <= 0) throw ValidationError(std::string(which) + " weights must be positive");
    return {lo, hi};
}

} // namespace

ClusteredTopology generate_clustered(const ClusteredTopologySpec& spec) {
    if (spec.cluster_sizes.empty()) throw ValidationError("cluster_sizes must be non-empty");
    for (const int size : spec.cluster_sizes)
        if (size < 1) throw ValidationError("cluster sizes must be positive");
    if (!(spec.intra_density > 0.0) || spec.intra_density > 1.0)
        throw ValidationError("intra_density must be in (0, 1]");
    if (spec.inter_edges_per_cluster_pair < 0)
        throw ValidationError("inter_edges_per_cluster_pair must be non-negative");
    if (spec.cluster_sizes.size() > 1 && spec.inter_edges_per_cluster_pair == 0)
        throw ValidationError("cannot connect more than one cluster with zero inter-cluster edges");

    const IntRange intra = integer_range(spec.intra_weight_range, "intra");
    const IntRange inter = integer_range(spec.inter_weight_range, "inter");
    if (spec.intra_weight_range.max > spec.inter_weight_range.min)
        throw ValidationError("intra-cluster weights must not exceed inter-cluster weights");

    const int num_clusters = static_cast<int>(spec.cluster_sizes.size());
    int total_nodes = 0;
    std::vector<int> first_node(spec.cluster_sizes.size());
    for (int c = 0; c < num_clusters; ++c) {
        first_node[static_cast<std::size_t>(c)] = total_nodes;
        total_nodes += spec.cluster_sizes[static_cast<std::size_t>(c)];
    }

    std::vector<std::string> labels;
    std::vector<int> cluster_of(static_cast<std::size_t>(total_nodes));
    labels.reserve(static_cast<std::size_t>(total_nodes));
    for (int c = 0; c < num_clusters; ++c) {
        for (int i = 0; i < spec.cluster_sizes[static_cast<std::size_t>(c)]; ++i) {
            cluster_of[labels.size()] = c;
            labels.push_back("n" + std::to_string(labels.size()));
        }
    }

    Rng rng(spec.seed);
    std::vector<Edge> edges;

    // Intra-cluster wiring: random spanning tree, then extra pairs by density.
    for (int c = 0; c < num_clusters; ++c) {
        const int base = first_node[static_cast<std::size_t>(c)];
        const int size = spec.cluster_sizes[static_cast<std::size_t>(c)];
        std::vector<char> wired(static_cast<std::size_t>(size) * size, 0);
        const auto wire = [&](int a, int b) {
            wired[static_cast<std::size_t>(a) * size + b] = 1;
            wired[static_cast<std::size_t>(b) * size + a] = 1;
            const auto weight = static_cast<double>(rng.uniform_int(intra.lo, intra.hi));
            edges.push_back(Edge{static_cast<NodeId>(base + a), static_cast<NodeId>(base + b), weight});
        };
        for (int i = 1; i < size; ++i) wire(i, static_cast<int>(rng.below(static_cast<std::uint64_t>(i))));
        for (int i = 0; i < size; ++i) {
            for (int j = i + 1; j < size; ++j) {
                if (wired[static_cast<std::size_t>(i) * size + j]) continue;
                if (rng.bernoulli(spec.intra_density)) wire(i, j);
            }
        }
    }

    // Inter-cluster links. The first link of every cluster pair joins the two
    // cluster gateways (each cluster's first node); additional links join
    // distinct random cross pairs.
    for (int a = 0; a < num_clusters; ++a) {
        for (int b = a + 1; b < num_clusters; ++b) {
            const int size_a = spec.cluster_sizes[static_cast<std::size_t>(a)];
            const int size_b = spec.cluster_sizes[static_cast<std::size_t>(b)];
            const int possible = size_a * size_b;
            const int count = std::min(spec.inter_edges_per_cluster_pair, possible);
            if (count == 0) continue;
            const auto add_cross = [&](int pick) {
                const NodeId u = static_cast<NodeId>(first_node[static_cast<std::size_t>(a)] + pick / size_b);
                const NodeId v = static_cast<NodeId>(first_node[static_cast<std::size_t>(b)] + pick % size_b);
                const auto weight = static_cast<double>(rng.uniform_int(inter.lo, inter.hi));
                edges.push_back(Edge{u, v, weight});
            };
            add_cross(0); // gateway-to-gateway
            if (count > 1) {
                for (const int pick : rng.sample_distinct(count - 1, possible - 1))
                    add_cross(pick + 1);
            }
        }
    }

    ClusteredTopology result{Topology(std::move(labels), std::move(edges)), std::move(cluster_of)};
    if (!validate_connected(result.topology))
        throw ValidationError("generated topology is not connected; spec is infeasible");
    return result;
}

ClusteredTopologySpec example_network_spec() {
    ClusteredTopologySpec spec;
    spec.cluster_sizes = {6, 6, 6, 5};
    spec.intra_weight_range = {1.0, 30.0};
    spec.inter_weight_range = {40.0, 100.0};
    spec.intra_density = 0.4;
    spec.inter_edges_per_cluster_pair = 1;
    spec.seed = 42;
    return spec;
}

} // namespace ctrlplace
