#pragma once

#include "ctrlplace/topology.hpp"

#include <cstdint>
#include <vector>

namespace ctrlplace {

struct WeightRange {
    double min = 0.0;
    double max = 0.0;
};

/// Recipe for a clustered network: groups of tightly connected nodes joined
/// by a smaller number of more expensive links. Intra-group weights must not
/// exceed inter-group weights. Generation is fully deterministic in `seed`.
struct ClusteredTopologySpec {
    std::vector<int> cluster_sizes;
    WeightRange intra_weight_range{1.0, 30.0};
    WeightRange inter_weight_range{40.0, 100.0};
    double intra_density = 0.4;               // fraction of intra-cluster pairs wired, in (0,1]
    int inter_edges_per_cluster_pair = 1;
    std::uint64_t seed = 42;
};

struct ClusteredTopology {
    Topology topology;
    std::vector<int> cluster_of; // ground-truth cluster index per node
};

/// Builds the clustered graph: a random spanning tree plus density extras
/// inside each cluster, then `inter_edges_per_cluster_pair` distinct links
/// between every cluster pair. Weights are drawn as integers from the given
/// ranges. The result is connected by construction; a spec that cannot be
/// connected (several clusters, zero inter edges) is rejected.
ClusteredTopology generate_clustered(const ClusteredTopologySpec& spec);

/// The 23-node, four-group example network shipped with the tool
/// (sizes 6,6,6,5, seed 42, low-latency intra links, high-latency inter links).
ClusteredTopologySpec example_network_spec();

} // namespace ctrlplace
