#pragma once

#include "ctrlplace/topology.hpp"

#include <vector>

namespace ctrlplace {

/// All-pairs shortest-path latencies. Immutable, finite, symmetric, zero
/// diagonal; construction rejects anything else.
class DistanceMatrix {
public:
    DistanceMatrix(int n, std::vector<double> distances);

    int size() const { return n_; }
    double operator()(NodeId a, NodeId b) const {
        return d_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)];
    }
    const std::vector<double>& data() const { return d_; }

private:
    int n_;
    std::vector<double> d_;
};

/// Shortest-path latencies from `source` to every node (Dijkstra; infinity
/// for unreachable nodes). Deterministic.
std::vector<double> single_source_distances(const Topology& topology, NodeId source);

/// Exact metric closure of the topology. Sources run in parallel; the result
/// does not depend on the schedule. Throws InfeasibleError on a disconnected
/// graph: every downstream latency formula assumes finite distances.
DistanceMatrix all_pairs_distances(const Topology& topology);

} // namespace ctrlplace
