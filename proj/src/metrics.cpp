#include "physnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace physnet {

double relative_length(const SpatialNetwork& net, std::span<const Point> centers) {
    if (centers.size() < 2)
        throw ConfigError("relative_length needs at least 2 centers");
    double complete = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            complete += distance(centers[i], centers[j]);
    return net.total_length() / complete;
}

namespace {

/// Matches each requested position to the nearest center node (ties by
/// lowest id); distinct positions must land on distinct nodes.
std::vector<int> match_centers(const SpatialNetwork& net, std::span<const Point> centers) {
    std::vector<int> center_nodes = net.center_ids();
    if (center_nodes.empty()) throw ConfigError("network has no center nodes");
    std::vector<int> matched;
    matched.reserve(centers.size());
    for (const Point& p : centers) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int id : center_nodes) {
            const double d = distance(net.node(id).pos, p);
            if (d < best_dist) {
                best_dist = d;
                best = id;
            }
        }
        if (std::find(matched.begin(), matched.end(), best) != matched.end())
            throw ConfigError("two requested centers match the same center node " +
                              std::to_string(best));
        matched.push_back(best);
    }
    return matched;
}

}  // namespace

std::map<int, std::map<int, double>> shortest_path_lengths(const SpatialNetwork& net,
                                                           std::span<const int> sources) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::map<int, std::map<int, double>> table;
    for (int source : sources) {
        std::map<int, double>& dist = table[source];
        for (const auto& n : net.nodes()) dist[n.id] = kInf;
        dist.at(source) = 0.0;

        using Entry = std::pair<double, int>;  // (distance, node id)
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (d > dist.at(u)) continue;
            for (std::size_t ei : net.incident_edges(u)) {
                const Edge& e = net.edge(ei);
                const int v = e.src == u ? e.dst : e.src;
                const double candidate = d + e.length;
                if (candidate < dist.at(v)) {
                    dist.at(v) = candidate;
                    heap.emplace(candidate, v);
                }
            }
        }
    }
    return table;
}

std::optional<double> relative_performance(const SpatialNetwork& net,
                                           std::span<const Point> centers) {
    if (centers.size() < 2)
        throw ConfigError("relative_performance needs at least 2 centers");
    const std::vector<int> nodes = match_centers(net, centers);
    const auto table = shortest_path_lengths(net, nodes);

    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const double d_net = table.at(nodes[i]).at(nodes[j]);
            if (!std::isfinite(d_net)) return std::nullopt;
            const double d_euc = distance(net.node(nodes[i]).pos, net.node(nodes[j]).pos);
            sum += d_net / d_euc;
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

std::vector<std::size_t> pareto_front_indices(std::span<const IndicatorPair> points) {
    for (const auto& p : points)
        if (!p.valid || !std::isfinite(p.perf_rel) || !std::isfinite(p.length_rel))
            throw ConfigError("pareto_front requires valid, finite indicator pairs");

    // Sweep in ascending length order; a point survives iff its perf is the
    // minimum of its equal-length group and strictly below every smaller
    // length's best perf.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].length_rel != points[b].length_rel)
            return points[a].length_rel < points[b].length_rel;
        return points[a].perf_rel < points[b].perf_rel;
    });

    std::vector<std::size_t> kept;
    double best_prev = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const double length = points[order[i]].length_rel;
        const double group_min = points[order[i]].perf_rel;
        while (j < order.size() && points[order[j]].length_rel == length) ++j;
        if (group_min < best_prev)
            for (std::size_t k = i; k < j; ++k)
                if (points[order[k]].perf_rel == group_min) kept.push_back(order[k]);
        best_prev = std::min(best_prev, group_min);
        i = j;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<IndicatorPair> pareto_front(std::span<const IndicatorPair> points) {
    std::vector<IndicatorPair> front;
    for (std::size_t i : pareto_front_indices(points)) front.push_back(points[i]);
    return front;
}

IndicatorPair evaluate_indicators(const SpatialNetwork& net, std::span<const Point> centers) {
    IndicatorPair pair;
    pair.length_rel = relative_length(net, centers);
    const auto perf = relative_performance(net, centers);
    pair.valid = perf.has_value();
    if (perf) pair.perf_rel = *perf;
    return pair;
}

}  // namespace physnet
