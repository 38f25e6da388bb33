#include "physnet/grid.hpp"

#include <cmath>
#include <map>
#include <string>

namespace physnet {

SpatialNetwork build_grid(int rows, int cols, const Rect& extent) {
    if (rows < 1 || cols < 1)
        throw ConfigError("grid dimensions must be >= 1, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));

    SpatialNetwork net;
    const auto coord = [](double lo, double hi, int i, int count) {
        if (count == 1) return 0.5 * (lo + hi);
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            net.add_node(r * cols + c, Point{coord(extent.x0, extent.x1, c, cols),
                                             coord(extent.y0, extent.y1, r, rows)});

    const auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) net.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) net.add_edge(id(r, c), id(r + 1, c));
            if (r + 1 < rows && c + 1 < cols) net.add_edge(id(r, c), id(r + 1, c + 1));
            if (r + 1 < rows && c > 0) net.add_edge(id(r, c), id(r + 1, c - 1));
        }
    }
    return net;
}

SpatialNetwork snap_centers(SpatialNetwork net, std::span<const Point> centers) {
    if (net.node_count() == 0) throw ConfigError("cannot snap centers onto an empty network");
    const Rect box = net.bounding_box();

    std::map<int, std::size_t> taken;  // node id -> index of the center that claimed it
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
        const Point& p = centers[ci];
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ConfigError("center " + std::to_string(ci) + " has non-finite coordinates");
        if (!box.contains(p))
            throw ConfigError("center " + std::to_string(ci) + " at (" + std::to_string(p.x) +
                              ", " + std::to_string(p.y) + ") lies outside the network extent");

        // Nodes are scanned in ascending id order; a strict < keeps the
        // lowest id among equidistant candidates.
        int best_id = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const auto& n : net.nodes()) {
            const double d = distance(n.pos, p);
            if (d < best_dist || (d == best_dist && (best_id < 0 || n.id < best_id))) {
                best_dist = d;
                best_id = n.id;
            }
        }

        const auto clash = taken.find(best_id);
        if (clash != taken.end())
            throw ConfigError("centers " + std::to_string(clash->second) + " and " +
                              std::to_string(ci) + " both snap to node " +
                              std::to_string(best_id));
        if (net.node(best_id).kind == NodeKind::Center)
            throw ConfigError("center " + std::to_string(ci) + " snaps to node " +
                              std::to_string(best_id) + " which is already a center");
        taken.emplace(best_id, ci);
        net.set_kind(best_id, NodeKind::Center);
    }
    return net;
}

}  // namespace physnet
