#include "ctrlplace/metrics.hpp"

#include "ctrlplace/errors.hpp"

#include <algorithm>

namespace ctrlplace {

Placement::Placement(std::vector<NodeId> controllers) : controllers_(std::move(controllers)) {
    if (controllers_.empty()) throw ValidationError("placement must contain at least one controller");
    std::sort(controllers_.begin(), controllers_.end());
    if (std::adjacent_find(controllers_.begin(), controllers_.end()) != controllers_.end())
        throw ValidationError("placement contains a duplicate controller id");
    if (controllers_.front() < 0) throw ValidationError("placement contains a negative node id");
}

bool Placement::contains(NodeId id) const {
    return std::binary_search(controllers_.begin(), controllers_.end(), id);
}

namespace {

void check_range(const DistanceMatrix& dist, const Placement& placement) {
    if (placement.ids().back() >= dist.size())
        throw ValidationError("placement references a node outside the distance matrix");
}

} // namespace

Assignment assign_nearest(const DistanceMatrix& dist, const Placement& placement) {
    check_range(dist, placement);
    const int n = dist.size();
    Assignment out;
    out.controller.resize(static_cast<std::size_t>(n));
    out.delay.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        NodeId best = placement.ids().front();
        double best_delay = dist(v, best);
        for (const NodeId s : placement.ids()) {
            const double d = dist(v, s);
            if (d < best_delay) { // sorted scan: ties keep the lowest id
                best_delay = d;
                best = s;
            }
        }
        out.controller[static_cast<std::size_t>(v)] = best;
        out.delay[static_cast<std::size_t>(v)] = best_delay;
    }
    return out;
}

double avg_latency(const DistanceMatrix& dist, const Placement& placement) {
    check_range(dist, placement);
    const int n = dist.size();
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        double best = dist(v, placement.ids().front());
        for (const NodeId s : placement.ids()) best = std::min(best, dist(v, s));
        total += best;
    }
    return total / static_cast<double>(n);
}

double worst_latency(const DistanceMatrix& dist, const Placement& placement) {
    check_range(dist, placement);
    const int n = dist.size();
    double worst = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        double best = dist(v, placement.ids().front());
        for (const NodeId s : placement.ids()) best = std::min(best, dist(v, s));
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<NodeId> coverage_within_bound(const DistanceMatrix& dist, const Placement& placement,
                                          double bound) {
    if (bound < 0.0) throw ValidationError("coverage bound must be non-negative");
    check_range(dist, placement);
    std::vector<NodeId> covered;
    for (NodeId v = 0; v < dist.size(); ++v) {
        double best = dist(v, placement.ids().front());
        for (const NodeId s : placement.ids()) best = std::min(best, dist(v, s));
        if (best <= bound) covered.push_back(v);
    }
    return covered;
}

CoverageSets coverage_sets(const DistanceMatrix& dist, double bound) {
    if (bound < 0.0) throw ValidationError("coverage bound must be non-negative");
    CoverageSets sets;
    sets.bound = bound;
    sets.members.resize(static_cast<std::size_t>(dist.size()));
    for (NodeId s = 0; s < dist.size(); ++s) {
        for (NodeId v = 0; v < dist.size(); ++v) {
            if (dist(v, s) <= bound) sets.members[static_cast<std::size_t>(s)].push_back(v);
        }
    }
    return sets;
}

} // namespace ctrlplace
