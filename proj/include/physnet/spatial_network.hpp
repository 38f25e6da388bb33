#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "physnet/errors.hpp"
#include "physnet/geometry.hpp"

namespace physnet {

enum class NodeKind { Regular, Center };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

struct Node {
    int id = 0;
    Point pos;
    NodeKind kind = NodeKind::Regular;
};

/// Undirected edge; `flow` is signed with positive meaning src -> dst.
struct Edge {
    int src = 0;
    int dst = 0;
    double length = 0.0;
    double diameter = 0.0;
    double impedance = 1.0;
    double flow = 0.0;
};

/// Planar network of nodes and undirected edges. Topology is fixed once
/// built; only per-edge diameter and flow values mutate, so a run can share
/// the construction path with every other consumer. At most one edge per
/// unordered node pair, no self-loops.
class SpatialNetwork {
public:
    SpatialNetwork() = default;

    /// Throws ConfigError on duplicate id or non-finite coordinates.
    std::size_t add_node(int id, Point pos, NodeKind kind = NodeKind::Regular);

    /// Length defaults to the Euclidean distance between the endpoints.
    /// Throws ConfigError on unknown endpoints, self-loops, duplicate pairs,
    /// or non-positive length/impedance.
    std::size_t add_edge(int src, int dst, std::optional<double> length = std::nullopt,
                         double diameter = 0.0, double impedance = 1.0);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_node(int id) const { return id_to_index_.count(id) != 0; }
    const Node& node(int id) const;
    std::size_t node_index(int id) const;

    const Edge& edge(std::size_t index) const { return edges_[index]; }
    std::optional<std::size_t> find_edge(int u, int v) const;

    void set_diameter(std::size_t edge_index, double d);
    void set_flow(std::size_t edge_index, double phi);
    void set_all_diameters(double d);
    void set_kind(int node_id, NodeKind kind);

    /// Indices into edges() of the edges incident to a node.
    const std::vector<std::size_t>& incident_edges(int node_id) const;
    std::size_t degree(int node_id) const { return incident_edges(node_id).size(); }

    /// Ids of nodes flagged Center, ascending.
    std::vector<int> center_ids() const;

    double total_length() const;

    /// Bounding box of node positions. Throws ConfigError when empty.
    Rect bounding_box() const;

    /// Rebuild the adjacency index from scratch and compare with the
    /// incrementally maintained one.
    bool adjacency_consistent() const;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::map<int, std::size_t> id_to_index_;
    std::vector<std::vector<std::size_t>> incident_;
    std::map<std::pair<int, int>, std::size_t> pair_to_edge_;
};

/// Equality on (nodes, edges, kinds, lengths, impedances, diameters) up to
/// ordering. Flows are transient and ignored.
bool networks_equal(const SpatialNetwork& a, const SpatialNetwork& b);

}  // namespace physnet
