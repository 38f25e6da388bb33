#include "physnet/postprocess.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

namespace physnet {

namespace {

struct EdgeDraft {
    int src;
    int dst;
    double length;
    double diameter;
    double impedance;
};

SpatialNetwork rebuild(const SpatialNetwork& source, const std::set<int>& keep_nodes,
                       const std::vector<EdgeDraft>& edges) {
    SpatialNetwork net;
    for (const auto& n : source.nodes())
        if (keep_nodes.count(n.id)) net.add_node(n.id, n.pos, n.kind);
    for (const auto& e : edges) net.add_edge(e.src, e.dst, e.length, e.diameter, e.impedance);
    return net;
}

}  // namespace

SpatialNetwork prune(const SpatialNetwork& net, double eps) {
    if (eps < 0.0) throw ConfigError("prune threshold must be >= 0");

    std::vector<EdgeDraft> kept;
    std::set<int> used;
    for (const auto& e : net.edges()) {
        if (e.diameter < eps) continue;
        kept.push_back(EdgeDraft{e.src, e.dst, e.length, e.diameter, e.impedance});
        used.insert(e.src);
        used.insert(e.dst);
    }
    std::set<int> keep_nodes = used;
    for (const auto& n : net.nodes())
        if (n.kind == NodeKind::Center) keep_nodes.insert(n.id);
    return rebuild(net, keep_nodes, kept);
}

ComponentFilterResult keep_center_components(const SpatialNetwork& net) {
    std::map<int, int> component;  // node id -> component label
    int n_components = 0;
    for (const auto& n : net.nodes()) {
        if (component.count(n.id)) continue;
        const int label = n_components++;
        std::deque<int> queue{n.id};
        component[n.id] = label;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (std::size_t ei : net.incident_edges(u)) {
                const Edge& e = net.edge(ei);
                const int v = e.src == u ? e.dst : e.src;
                if (!component.count(v)) {
                    component[v] = label;
                    queue.push_back(v);
                }
            }
        }
    }

    std::set<int> center_components;
    for (int id : net.center_ids()) center_components.insert(component.at(id));
    const bool connected = center_components.size() <= 1 && !net.center_ids().empty();

    std::set<int> keep_nodes;
    for (const auto& n : net.nodes())
        if (center_components.count(component.at(n.id))) keep_nodes.insert(n.id);
    std::vector<EdgeDraft> kept;
    for (const auto& e : net.edges())
        if (keep_nodes.count(e.src))
            kept.push_back(EdgeDraft{e.src, e.dst, e.length, e.diameter, e.impedance});
    return ComponentFilterResult{rebuild(net, keep_nodes, kept), connected};
}

namespace {

// One contraction pass. Returns true if anything changed.
bool contract_pass(const SpatialNetwork& net, SpatialNetwork& out) {
    const auto contractible = [&](int id) {
        return net.node(id).kind == NodeKind::Regular && net.degree(id) == 2;
    };

    std::vector<bool> edge_done(net.edge_count(), false);
    std::vector<EdgeDraft> drafts;
    bool changed = false;

    // Walk maximal chains starting from anchors (non-contractible nodes), in
    // ascending id order for determinism.
    std::vector<int> ids;
    for (const auto& n : net.nodes()) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());

    for (int anchor : ids) {
        if (contractible(anchor)) continue;
        for (std::size_t first : net.incident_edges(anchor)) {
            if (edge_done[first]) continue;
            int prev = anchor;
            std::size_t ei = first;
            double total_length = 0.0;
            double resistance = 0.0;  // sum L_i / D_i
            bool dead = false;        // a zero-diameter segment kills the series value
            std::size_t count = 0;
            int cur = prev;
            while (true) {
                edge_done[ei] = true;
                const Edge& e = net.edge(ei);
                cur = e.src == prev ? e.dst : e.src;
                total_length += e.length;
                if (e.diameter > 0.0)
                    resistance += e.length / e.diameter;
                else
                    dead = true;
                ++count;
                if (!contractible(cur)) break;
                const auto& inc = net.incident_edges(cur);
                const std::size_t next = inc[0] == ei ? inc[1] : inc[0];
                prev = cur;
                ei = next;
            }
            if (count == 1) {
                // Plain edge between two anchors: copy untouched.
                const Edge& e = net.edge(first);
                drafts.push_back(EdgeDraft{e.src, e.dst, e.length, e.diameter, e.impedance});
                continue;
            }
            changed = true;
            if (cur == anchor) continue;  // chain loops back onto its anchor: drop
            const double d_eq = dead ? 0.0 : total_length / resistance;
            drafts.push_back(EdgeDraft{anchor, cur, total_length, d_eq, 1.0});
        }
    }

    // Cycles made purely of contractible nodes have no anchor to start a walk
    // from; their edges stay unvisited and are dropped.
    for (std::size_t ei = 0; ei < net.edge_count(); ++ei)
        if (!edge_done[ei]) changed = true;

    // Merge parallel duplicates: keep the shorter edge, ties by larger
    // diameter, then by draft order.
    std::map<std::pair<int, int>, EdgeDraft> merged;
    for (const auto& d : drafts) {
        const auto key = std::minmax(d.src, d.dst);
        const auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, d);
            continue;
        }
        changed = true;
        const EdgeDraft& held = it->second;
        if (d.length < held.length ||
            (d.length == held.length && d.diameter > held.diameter))
            it->second = d;
    }

    std::set<int> keep_nodes;
    for (const auto& [key, d] : merged) {
        keep_nodes.insert(d.src);
        keep_nodes.insert(d.dst);
    }
    for (const auto& n : net.nodes()) {
        if (n.kind == NodeKind::Center)
            keep_nodes.insert(n.id);
        else if (!contractible(n.id) && net.degree(n.id) == 0)
            keep_nodes.insert(n.id);  // was isolated before this pass: prune's business
    }
    // Regular nodes that lost every edge to loop drops are discarded.

    std::vector<EdgeDraft> ordered;
    ordered.reserve(merged.size());
    for (const auto& [key, d] : merged) ordered.push_back(d);
    out = rebuild(net, keep_nodes, ordered);
    if (out.node_count() != net.node_count()) changed = true;
    return changed;
}

}  // namespace

SpatialNetwork contract_degree2(const SpatialNetwork& net) {
    SpatialNetwork current = net;
    // Parallel merges can expose new degree-2 nodes; iterate to a fixpoint.
    for (;;) {
        SpatialNetwork next;
        if (!contract_pass(current, next)) return current;
        current = std::move(next);
    }
}

PostprocessResult postprocess_pipeline(const SpatialNetwork& net, double eps) {
    auto filtered = keep_center_components(prune(net, eps));
    return PostprocessResult{contract_degree2(filtered.net), filtered.connected};
}

}  // namespace physnet
