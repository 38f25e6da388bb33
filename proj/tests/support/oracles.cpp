#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

using physnet::Edge;
using physnet::FlowScenario;
using physnet::IndicatorPair;
using physnet::Point;
using physnet::Rng;
using physnet::SpatialNetwork;

std::map<int, double> dense_pressures(const SpatialNetwork& net, const FlowScenario& scenario,
                                      int gauge_id) {
    // Index nodes by ascending id.
    std::vector<int> ids;
    for (const auto& node : net.nodes()) ids.push_back(node.id);
    std::sort(ids.begin(), ids.end());
    const std::size_t n = ids.size();
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[ids[i]] = i;

    // Full (singular) Laplacian and injected currents.
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (const Edge& e : net.edges()) {
        const double g = physnet::conductance(e);
        if (g <= 0.0) continue;
        const std::size_t i = index.at(e.src);
        const std::size_t j = index.at(e.dst);
        a[i][i] += g;
        a[j][j] += g;
        a[i][j] -= g;
        a[j][i] -= g;
    }
    for (const auto& [id, current] : scenario.currents()) b[index.at(id)] = current;

    // Replace the gauge row by the constraint p[gauge] = 0.
    const std::size_t gauge = index.at(gauge_id);
    for (std::size_t j = 0; j < n; ++j) a[gauge][j] = 0.0;
    a[gauge][gauge] = 1.0;
    b[gauge] = 0.0;

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-14)
            throw std::runtime_error("dense oracle: singular system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> p(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double sum = b[row];
        for (std::size_t k = row + 1; k < n; ++k) sum -= a[row][k] * p[k];
        p[row] = sum / a[row][row];
    }

    std::map<int, double> result;
    for (std::size_t i = 0; i < n; ++i) result[ids[i]] = p[i];
    return result;
}

std::vector<std::pair<int, int>> prim_mst(const std::vector<Point>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 2) return {};
    std::vector<bool> in_tree(points.size(), false);
    std::vector<double> best(points.size(), std::numeric_limits<double>::infinity());
    std::vector<int> best_from(points.size(), -1);
    std::vector<std::pair<int, int>> edges;

    in_tree[0] = true;
    for (int i = 1; i < n; ++i) {
        best[static_cast<std::size_t>(i)] = physnet::distance(points[0], points[static_cast<std::size_t>(i)]);
        best_from[static_cast<std::size_t>(i)] = 0;
    }
    for (int round = 1; round < n; ++round) {
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            if (in_tree[static_cast<std::size_t>(i)]) continue;
            if (pick == -1 || best[static_cast<std::size_t>(i)] < best[static_cast<std::size_t>(pick)]) pick = i;
        }
        in_tree[static_cast<std::size_t>(pick)] = true;
        const int from = best_from[static_cast<std::size_t>(pick)];
        edges.emplace_back(std::min(from, pick), std::max(from, pick));
        for (int i = 0; i < n; ++i) {
            if (in_tree[static_cast<std::size_t>(i)]) continue;
            const double d = physnet::distance(points[static_cast<std::size_t>(pick)], points[static_cast<std::size_t>(i)]);
            if (d < best[static_cast<std::size_t>(i)]) {
                best[static_cast<std::size_t>(i)] = d;
                best_from[static_cast<std::size_t>(i)] = pick;
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

double exhaustive_mst_length(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    if (n < 2) return 0.0;
    if (n == 2) return physnet::distance(points[0], points[1]);
    if (n > 8) throw std::runtime_error("exhaustive oracle limited to n <= 8");

    // Enumerate all n^(n-2) Pruefer sequences; decode each into its tree.
    double best = std::numeric_limits<double>::infinity();
    const std::size_t seq_len = n - 2;
    std::vector<std::size_t> seq(seq_len, 0);
    for (;;) {
        // Decode the current sequence.
        std::vector<int> degree(n, 1);
        for (const std::size_t s : seq) ++degree[s];
        double total = 0.0;
        std::vector<bool> used(n, false);
        for (const std::size_t s : seq) {
            for (std::size_t leaf = 0; leaf < n; ++leaf) {
                if (degree[leaf] == 1 && !used[leaf]) {
                    total += physnet::distance(points[leaf], points[s]);
                    used[leaf] = true;
                    --degree[s];
                    break;
                }
            }
        }
        std::size_t u = 0, v = 0;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (degree[i] == 1 && !used[i]) {
                if (first) {
                    u = i;
                    first = false;
                } else {
                    v = i;
                }
            }
        }
        total += physnet::distance(points[u], points[v]);
        best = std::min(best, total);

        // Advance the sequence (odometer).
        std::size_t pos = 0;
        while (pos < seq_len && ++seq[pos] == n) {
            seq[pos] = 0;
            ++pos;
        }
        if (pos == seq_len) break;
    }
    return best;
}

std::map<int, std::map<int, double>> all_pairs_shortest_paths(const SpatialNetwork& net) {
    std::vector<int> ids;
    for (const auto& node : net.nodes()) ids.push_back(node.id);
    std::sort(ids.begin(), ids.end());
    const std::size_t n = ids.size();
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[ids[i]] = i;

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const Edge& e : net.edges()) {
        const std::size_t i = index.at(e.src);
        const std::size_t j = index.at(e.dst);
        d[i][j] = std::min(d[i][j], e.length);
        d[j][i] = std::min(d[j][i], e.length);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i][k] == inf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double via = d[i][k] + d[k][j];
                if (via < d[i][j]) d[i][j] = via;
            }
        }

    std::map<int, std::map<int, double>> result;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) result[ids[i]][ids[j]] = d[i][j];
    return result;
}

std::vector<std::size_t> pareto_front_oracle(const std::vector<IndicatorPair>& points) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (j == i) continue;
            const bool le_both = points[j].length_rel <= points[i].length_rel &&
                                 points[j].perf_rel <= points[i].perf_rel;
            const bool lt_any = points[j].length_rel < points[i].length_rel ||
                                points[j].perf_rel < points[i].perf_rel;
            if (le_both && lt_any) dominated = true;
        }
        if (!dominated) front.push_back(i);
    }
    return front;
}

SpatialNetwork random_connected_graph(Rng& rng, int n_nodes, double extra_edge_share,
                                      double d_lo, double d_hi) {
    SpatialNetwork net;
    for (int i = 0; i < n_nodes; ++i)
        net.add_node(i, Point{rng.uniform01(), rng.uniform01()});

    const auto random_diameter = [&] { return rng.uniform(d_lo, d_hi); };

    // Random spanning tree: attach each node to a random earlier one.
    for (int i = 1; i < n_nodes; ++i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
        net.add_edge(j, i, std::nullopt, random_diameter());
    }
    // Extra edges for cycles.
    const int extras = static_cast<int>(extra_edge_share * n_nodes);
    for (int k = 0; k < extras; ++k) {
        const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_nodes)));
        const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_nodes)));
        if (u == v || net.find_edge(u, v)) continue;
        net.add_edge(u, v, std::nullopt, random_diameter());
    }
    return net;
}

}  // namespace oracles
