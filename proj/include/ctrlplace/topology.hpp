#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctrlplace {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

/// Undirected link between two switches. Stored canonically with u < v;
/// the weight is the link latency and is strictly positive.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 0.0;
};

struct Neighbor {
    NodeId to;
    double weight;
    EdgeId edge;
};

/// Latency-weighted undirected network graph. Node ids are dense 0..n-1,
/// labels are unique, and there is at most one edge per unordered pair.
/// Immutable after construction, safe for concurrent reads.
class Topology {
public:
    /// Validates and canonicalizes: rejects empty node sets, duplicate
    /// labels, self-loops, out-of-range endpoints, non-positive weights and
    /// duplicate unordered pairs. Edges end up sorted by (u, v).
    Topology(std::vector<std::string> labels, std::vector<Edge> edges);

    int node_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(NodeId id) const { return labels_[static_cast<std::size_t>(id)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of `id`, sorted ascending by target node id.
    std::span<const Neighbor> neighbors(NodeId id) const;

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<Neighbor> adjacency_;
    std::vector<std::int32_t> offsets_;
};

/// True iff the graph is a single connected component.
bool validate_connected(const Topology& topology);

enum class TopologyFormat { Adjacency, EdgeList, Json };

/// Parses a square adjacency matrix in CSV form. An optional header row
/// carries the node labels (with an optional empty corner cell); when the
/// header is present each data row starts with a label cell. Zero or empty
/// cells mean "no edge". The matrix must be symmetric up to 1e-9; the edge
/// weight is taken from the upper triangle.
Topology load_adjacency_csv(std::string_view text);

/// Parses "source,target,weight" lines; the header line is optional. Labels
/// are registered in order of first appearance. Repeating an unordered pair
/// is an error even when the weights agree.
Topology load_edge_list(std::string_view text);

/// Parses the canonical JSON document {"nodes":[{"id","label"}],
/// "edges":[{"u","v","weight"}]}. Node ids must be dense.
Topology load_topology_json(std::string_view text);

Topology load_topology(std::string_view text, TopologyFormat format);

std::string to_adjacency_csv(const Topology& topology);
std::string to_edge_list_csv(const Topology& topology);
std::string to_topology_json(const Topology& topology);
std::string serialize_topology(const Topology& topology, TopologyFormat format);

} // namespace ctrlplace
