#pragma once

#include "ctrlplace/distance_matrix.hpp"

#include <vector>

namespace ctrlplace {

/// A controller site set: non-empty, sorted, duplicate-free node ids.
class Placement {
public:
    explicit Placement(std::vector<NodeId> controllers);

    const std::vector<NodeId>& ids() const { return controllers_; }
    int k() const { return static_cast<int>(controllers_.size()); }
    bool contains(NodeId id) const;

    friend bool operator==(const Placement&, const Placement&) = default;

private:
    std::vector<NodeId> controllers_;
};

/// Per-switch nearest-controller mapping. Controllers map to themselves
/// with delay zero.
struct Assignment {
    std::vector<NodeId> controller; // per node
    std::vector<double> delay;      // per node
};

/// Maps every node to its minimum-delay controller; equal delays resolve to
/// the lowest controller id so reports are reproducible.
Assignment assign_nearest(const DistanceMatrix& dist, const Placement& placement);

/// Mean over all nodes of the delay to the nearest chosen controller.
double avg_latency(const DistanceMatrix& dist, const Placement& placement);

/// Largest node-to-nearest-controller delay.
double worst_latency(const DistanceMatrix& dist, const Placement& placement);

/// Nodes whose nearest-controller delay is within `bound`, ascending.
/// Negative bounds are rejected.
std::vector<NodeId> coverage_within_bound(const DistanceMatrix& dist, const Placement& placement,
                                          double bound);

/// For every candidate site, the set of nodes it would cover within the
/// bound. The covered set of a placement is the union over its sites.
struct CoverageSets {
    double bound = 0.0;
    std::vector<std::vector<NodeId>> members; // per candidate site
};

CoverageSets coverage_sets(const DistanceMatrix& dist, double bound);

} // namespace ctrlplace
