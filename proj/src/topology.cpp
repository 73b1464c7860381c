#include "ctrlplace/topology.hpp"

#include "ctrlplace/errors.hpp"
#include "ctrlplace/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cctype>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace ctrlplace {

namespace {

constexpr double kSymmetryTolerance = 1e-9;

std::string at(int row, int col) {
    return "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

} // namespace

Topology::Topology(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
    if (labels_.empty()) throw ValidationError("topology must have at least one node");

    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels_) {
        if (label.empty()) throw ValidationError("empty node label");
        if (!seen.insert(label).second) throw ValidationError("duplicate node label '" + label + "'");
    }

    const auto n = static_cast<NodeId>(labels_.size());
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw ValidationError("edge endpoint out of range");
        if (e.u == e.v) throw ValidationError("self-loop on node '" + labels_[e.u] + "'");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw ValidationError("non-positive edge weight between '" + labels_[e.u] + "' and '" +
                                  labels_[e.v] + "'");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw ValidationError("duplicate edge between '" + labels_[edges_[i].u] + "' and '" +
                                  labels_[edges_[i].v] + "'");
    }

    // CSR adjacency, neighbors sorted by target id.
    std::vector<std::int32_t> degree(labels_.size(), 0);
    for (const auto& e : edges_) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(labels_.size() + 1, 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    adjacency_.resize(static_cast<std::size_t>(offsets_.back()));
    std::vector<std::int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        adjacency_[static_cast<std::size_t>(cursor[e.u]++)] = Neighbor{e.v, e.weight, id};
        adjacency_[static_cast<std::size_t>(cursor[e.v]++)] = Neighbor{e.u, e.weight, id};
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    }
}

std::span<const Neighbor> Topology::neighbors(NodeId id) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(id)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(id) + 1]);
    return {adjacency_.data() + b, e - b};
}

bool validate_connected(const Topology& topology) {
    const int n = topology.node_count();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::deque<NodeId> frontier{0};
    visited[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop_front();
        for (const Neighbor& nb : topology.neighbors(v)) {
            if (!visited[static_cast<std::size_t>(nb.to)]) {
                visited[static_cast<std::size_t>(nb.to)] = 1;
                ++reached;
                frontier.push_back(nb.to);
            }
        }
    }
    return reached == n;
}

Topology load_adjacency_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("adjacency CSV: empty input");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const auto& line : lines) {
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw ParseError("adjacency CSV: empty input");

    // A header row is any first row containing a non-numeric, non-empty cell.
    bool has_header = false;
    for (const auto& cell : rows.front()) {
        if (!cell.empty() && !parse_number(cell)) {
            has_header = true;
            break;
        }
    }

    std::vector<std::string> labels;
    std::size_t first_data_row = 0;
    std::size_t label_columns = 0;
    const std::size_t n = has_header ? rows.size() - 1 : rows.size();
    if (n == 0) throw ParseError("adjacency CSV: header without data rows");

    if (has_header) {
        first_data_row = 1;
        auto header = rows.front();
        if (header.size() == n + 1) header.erase(header.begin()); // corner cell
        if (header.size() != n)
            throw ParseError("adjacency CSV: " + std::to_string(header.size()) +
                             " header labels for " + std::to_string(n) + " data rows");
        labels = std::move(header);
        label_columns = 1; // data rows start with a label cell
    } else {
        for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
    }

    std::vector<double> cellval(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[first_data_row + i];
        if (row.size() != n + label_columns)
            throw ParseError("adjacency CSV: non-square matrix, row " +
                             std::to_string(first_data_row + i + 1) + " has " +
                             std::to_string(row.size() - label_columns) + " value cells, expected " +
                             std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = row[j + label_columns];
            if (cell.empty()) continue;
            const auto value = parse_number(cell);
            if (!value)
                throw ParseError("adjacency CSV: unparseable cell '" + cell + "' at " +
                                 at(static_cast<int>(first_data_row + i), static_cast<int>(j + label_columns)));
            if (*value < 0.0)
                throw ParseError("adjacency CSV: negative weight at " +
                                 at(static_cast<int>(first_data_row + i), static_cast<int>(j + label_columns)));
            cellval[i * n + j] = *value;
        }
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (cellval[i * n + i] != 0.0)
            throw ParseError("adjacency CSV: nonzero diagonal (self-loop) at " +
                             at(static_cast<int>(first_data_row + i), static_cast<int>(i + label_columns)));
        for (std::size_t j = i + 1; j < n; ++j) {
            const double upper = cellval[i * n + j];
            const double lower = cellval[j * n + i];
            if (std::abs(upper - lower) > kSymmetryTolerance)
                throw ParseError("adjacency CSV: asymmetric entry at " +
                                 at(static_cast<int>(first_data_row + i), static_cast<int>(j + label_columns)) +
                                 " (" + format_number(upper) + " vs " + format_number(lower) + ")");
            if (upper > 0.0)
                edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(j), upper});
        }
    }
    return Topology(std::move(labels), std::move(edges));
}

Topology load_edge_list(std::string_view text) {
    const auto lines = split_lines(text);
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    const auto intern = [&](const std::string& label) {
        const auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::vector<Edge> edges;
    std::unordered_map<std::uint64_t, double> seen_pairs;
    bool first_content_line = true;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto& line = lines[ln];
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (first_content_line) {
            first_content_line = false;
            if (cells.size() == 3 && !parse_number(cells[2])) {
                std::string lowered = cells[2];
                for (char& c : lowered) c = static_cast<char>(std::tolower(c));
                if (lowered == "weight") continue;
            }
        }
        const std::string where = "line " + std::to_string(ln + 1);
        if (cells.size() != 3)
            throw ParseError("edge list: malformed " + where + " (expected source,target,weight)");
        const auto weight = parse_number(cells[2]);
        if (!weight) throw ParseError("edge list: unparseable weight '" + cells[2] + "' at " + where);
        if (!(*weight > 0.0))
            throw ParseError("edge list: non-positive weight at " + where);
        if (cells[0].empty() || cells[1].empty())
            throw ParseError("edge list: empty endpoint label at " + where);
        const NodeId u = intern(cells[0]);
        const NodeId v = intern(cells[1]);
        if (u == v) throw ParseError("edge list: self-loop at " + where);
        const auto lo = static_cast<std::uint64_t>(std::min(u, v));
        const auto hi = static_cast<std::uint64_t>(std::max(u, v));
        const auto key = (lo << 32) | hi;
        const auto [it, inserted] = seen_pairs.emplace(key, *weight);
        if (!inserted) {
            throw ParseError("edge list: duplicate pair '" + cells[0] + "," + cells[1] + "' at " +
                             where + (it->second != *weight ? " with conflicting weight" : ""));
        }
        edges.push_back(Edge{u, v, *weight});
    }
    if (labels.empty()) throw ParseError("edge list: no edges or nodes found");
    return Topology(std::move(labels), std::move(edges));
}

Topology load_topology_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("topology JSON: ") + e.what());
    }
    try {
        const auto& nodes = doc.at("nodes");
        std::vector<std::string> labels(nodes.size());
        std::vector<char> filled(nodes.size(), 0);
        for (const auto& node : nodes) {
            const auto id = node.at("id").get<std::int64_t>();
            if (id < 0 || id >= static_cast<std::int64_t>(nodes.size()))
                throw ParseError("topology JSON: node ids must be dense 0..n-1");
            if (filled[static_cast<std::size_t>(id)])
                throw ParseError("topology JSON: duplicate node id " + std::to_string(id));
            filled[static_cast<std::size_t>(id)] = 1;
            labels[static_cast<std::size_t>(id)] = node.at("label").get<std::string>();
        }
        std::vector<Edge> edges;
        for (const auto& edge : doc.at("edges")) {
            edges.push_back(Edge{edge.at("u").get<NodeId>(), edge.at("v").get<NodeId>(),
                                 edge.at("weight").get<double>()});
        }
        return Topology(std::move(labels), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("topology JSON: ") + e.what());
    }
}

Topology load_topology(std::string_view text, TopologyFormat format) {
    switch (format) {
    case TopologyFormat::Adjacency: return load_adjacency_csv(text);
    case TopologyFormat::EdgeList: return load_edge_list(text);
    case TopologyFormat::Json: return load_topology_json(text);
    }
    throw ValidationError("unknown topology format");
}

std::string to_adjacency_csv(const Topology& topology) {
    const int n = topology.node_count();
    std::vector<double> matrix(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (const Edge& e : topology.edges()) {
        matrix[static_cast<std::size_t>(e.u) * n + e.v] = e.weight;
        matrix[static_cast<std::size_t>(e.v) * n + e.u] = e.weight;
    }
    std::string out;
    for (int j = 0; j < n; ++j) {
        out += ',';
        out += topology.label(j);
    }
    out += '\n';
    for (int i = 0; i < n; ++i) {
        out += topology.label(i);
        for (int j = 0; j < n; ++j) {
            out += ',';
            out += format_number(matrix[static_cast<std::size_t>(i) * n + j]);
        }
        out += '\n';
    }
    return out;
}

std::string to_edge_list_csv(const Topology& topology) {
    std::string out = "source,target,weight\n";
    for (const Edge& e : topology.edges()) {
        out += topology.label(e.u);
        out += ',';
        out += topology.label(e.v);
        out += ',';
        out += format_number(e.weight);
        out += '\n';
    }
    return out;
}

std::string to_topology_json(const Topology& topology) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (NodeId id = 0; id < topology.node_count(); ++id) {
        doc["nodes"].push_back({{"id", id}, {"label", topology.label(id)}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : topology.edges()) {
        doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}});
    }
    return doc.dump(2) + "\n";
}

std::string serialize_topology(const Topology& topology, TopologyFormat format) {
    switch (format) {
    case TopologyFormat::Adjacency: return to_adjacency_csv(topology);
    case TopologyFormat::EdgeList: return to_edge_list_csv(topology);
    case TopologyFormat::Json: return to_topology_json(topology);
    }
    throw ValidationError("unknown topology format");
}

} // namespace ctrlplace
