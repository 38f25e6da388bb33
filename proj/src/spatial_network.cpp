#include "physnet/spatial_network.hpp"

#include <algorithm>
#include <cmath>

namespace physnet {

std::string to_string(NodeKind kind) {
    return kind == NodeKind::Center ? "center" : "regular";
}

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "regular") return NodeKind::Regular;
    if (s == "center") return NodeKind::Center;
    throw ConfigError("unknown node kind '" + s + "' (expected regular or center)");
}

std::size_t SpatialNetwork::add_node(int id, Point pos, NodeKind kind) {
    if (id_to_index_.count(id) != 0)
        throw ConfigError("duplicate node id " + std::to_string(id));
    if (!std::isfinite(pos.x) || !std::isfinite(pos.y))
        throw ConfigError("non-finite coordinates for node " + std::to_string(id));
    const std::size_t index = nodes_.size();
    nodes_.push_back(Node{id, pos, kind});
    incident_.emplace_back();
    id_to_index_.emplace(id, index);
    return index;
}

std::size_t SpatialNetwork::add_edge(int src, int dst, std::optional<double> length,
                                     double diameter, double impedance) {
    if (src == dst)
        throw ConfigError("self-loop on node " + std::to_string(src));
    const auto src_it = id_to_index_.find(src);
    const auto dst_it = id_to_index_.find(dst);
    if (src_it == id_to_index_.end())
        throw ConfigError("edge endpoint references unknown node " + std::to_string(src));
    if (dst_it == id_to_index_.end())
        throw ConfigError("edge endpoint references unknown node " + std::to_string(dst));
    const auto key = std::minmax(src, dst);
    if (pair_to_edge_.count(key) != 0)
        throw ConfigError("duplicate edge between nodes " + std::to_string(src) + " and " +
                          std::to_string(dst));
    const double len =
        length ? *length : distance(nodes_[src_it->second].pos, nodes_[dst_it->second].pos);
    if (!(len > 0.0) || !std::isfinite(len))
        throw ConfigError("edge " + std::to_string(src) + "-" + std::to_string(dst) +
                          " has non-positive length");
    if (!(impedance > 0.0) || !std::isfinite(impedance))
        throw ConfigError("edge " + std::to_string(src) + "-" + std::to_string(dst) +
                          " has non-positive impedance");
    if (diameter < 0.0 || !std::isfinite(diameter))
        throw ConfigError("edge " + std::to_string(src) + "-" + std::to_string(dst) +
                          " has negative diameter");

    const std::size_t index = edges_.size();
    edges_.push_back(Edge{src, dst, len, diameter, impedance, 0.0});
    incident_[src_it->second].push_back(index);
    incident_[dst_it->second].push_back(index);
    pair_to_edge_.emplace(key, index);
    return index;
}

const Node& SpatialNetwork::node(int id) const { return nodes_[node_index(id)]; }

std::size_t SpatialNetwork::node_index(int id) const {
    const auto it = id_to_index_.find(id);
    if (it == id_to_index_.end())
        throw ConfigError("unknown node id " + std::to_string(id));
    return it->second;
}

std::optional<std::size_t> SpatialNetwork::find_edge(int u, int v) const {
    const auto it = pair_to_edge_.find(std::minmax(u, v));
    if (it == pair_to_edge_.end()) return std::nullopt;
    return it->second;
}

void SpatialNetwork::set_diameter(std::size_t edge_index, double d) {
    if (d < 0.0 || !std::isfinite(d))
        throw ConfigError("diameter must be finite and >= 0");
    edges_[edge_index].diameter = d;
}

void SpatialNetwork::set_flow(std::size_t edge_index, double phi) {
    edges_[edge_index].flow = phi;
}

void SpatialNetwork::set_all_diameters(double d) {
    if (d < 0.0 || !std::isfinite(d))
        throw ConfigError("diameter must be finite and >= 0");
    for (auto& e : edges_) e.diameter = d;
}

void SpatialNetwork::set_kind(int node_id, NodeKind kind) {
    nodes_[node_index(node_id)].kind = kind;
}

const std::vector<std::size_t>& SpatialNetwork::incident_edges(int node_id) const {
    return incident_[node_index(node_id)];
}

std::vector<int> SpatialNetwork::center_ids() const {
    std::vector<int> ids;
    for (const auto& [id, index] : id_to_index_)
        if (nodes_[index].kind == NodeKind::Center) ids.push_back(id);
    return ids;
}

double SpatialNetwork::total_length() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.length;
    return total;
}

Rect SpatialNetwork::bounding_box() const {
    if (nodes_.empty()) throw ConfigError("bounding box of empty network");
    Rect box{nodes_[0].pos.x, nodes_[0].pos.y, nodes_[0].pos.x, nodes_[0].pos.y};
    for (const auto& n : nodes_) {
        box.x0 = std::min(box.x0, n.pos.x);
        box.y0 = std::min(box.y0, n.pos.y);
        box.x1 = std::max(box.x1, n.pos.x);
        box.y1 = std::max(box.y1, n.pos.y);
    }
    return box;
}

bool SpatialNetwork::adjacency_consistent() const {
    std::vector<std::vector<std::size_t>> rebuilt(nodes_.size());
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        rebuilt[id_to_index_.at(edges_[ei].src)].push_back(ei);
        rebuilt[id_to_index_.at(edges_[ei].dst)].push_back(ei);
    }
    return rebuilt == incident_;
}

bool networks_equal(const SpatialNetwork& a, const SpatialNetwork& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    for (const auto& n : a.nodes()) {
        if (!b.has_node(n.id)) return false;
        const Node& m = b.node(n.id);
        if (!(m.pos == n.pos) || m.kind != n.kind) return false;
    }
    for (const auto& e : a.edges()) {
        const auto other = b.find_edge(e.src, e.dst);
        if (!other) return false;
        const Edge& f = b.edge(*other);
        if (f.length != e.length || f.diameter != e.diameter || f.impedance != e.impedance)
            return false;
    }
    return true;
}

}  // namespace physnet
