#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "physnet/spatial_network.hpp"

namespace physnet {

/// The two contradictory design indicators, both to be minimized.
/// perf_rel is meaningful only when valid (centers mutually reachable).
struct IndicatorPair {
    double length_rel = 0.0;
    double perf_rel = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
};

/// Total edge length divided by the total length of the complete graph over
/// the given centers.
double relative_length(const SpatialNetwork& net, std::span<const Point> centers);

/// Mean over unordered center pairs of network shortest-path distance over
/// Euclidean distance. Centers are matched to the network's center nodes by
/// nearest position. nullopt when any pair is unreachable.
std::optional<double> relative_performance(const SpatialNetwork& net,
                                           std::span<const Point> centers);

/// Length-weighted shortest-path distances from each source to every node;
/// unreachable nodes map to +infinity.
std::map<int, std::map<int, double>> shortest_path_lengths(const SpatialNetwork& net,
                                                           std::span<const int> sources);

/// Indices of the non-dominated points. p survives iff no q has
/// q.length_rel <= p.length_rel and q.perf_rel <= p.perf_rel with one strict;
/// exact duplicates are all kept. Points must be valid.
std::vector<std::size_t> pareto_front_indices(std::span<const IndicatorPair> points);

std::vector<IndicatorPair> pareto_front(std::span<const IndicatorPair> points);

/// Both indicators in one evaluation.
IndicatorPair evaluate_indicators(const SpatialNetwork& net, std::span<const Point> centers);

}  // namespace physnet
