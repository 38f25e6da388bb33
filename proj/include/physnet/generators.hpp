#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "physnet/physarum.hpp"
#include "physnet/postprocess.hpp"
#include "physnet/spatial_network.hpp"

namespace physnet {

/// Sampled centers stay this far away from the unit-square boundary.
inline constexpr double kCenterMargin = 0.05;

/// A center placement plus the seed it came from (reused to derive the
/// simulation's scheduler stream, so a scenario file replays a run exactly).
struct Scenario {
    std::vector<Point> centers;
    std::uint64_t seed = 0;

    int n() const { return static_cast<int>(centers.size()); }
    void validate() const;  // >= 2 distinct, finite centers
};

/// N i.i.d. uniform centers on [margin, 1-margin]^2, deterministic in seed.
Scenario sample_centers(int n, std::uint64_t seed);

/// All centers pairwise connected by direct links.
SpatialNetwork complete_network(const Scenario& scenario);

/// Progressive connection of the closest weak components, starting from the
/// isolated centers; equals the Euclidean minimum spanning tree.
SpatialNetwork tree_network(const Scenario& scenario);

struct GridDims {
    int rows = 15;
    int cols = 15;
};

struct SlimeResult {
    SpatialNetwork net;
    bool connected = false;
    int iterations = 0;
};

/// Full adaptive-flow pipeline: grid, snapped centers, MultiCenter run,
/// prune, component filter, contraction. Deterministic in
/// (scenario.seed, params).
SlimeResult slime_network(const Scenario& scenario, const PhysarumParams& params,
                          GridDims grid = {}, double prune_eps = kDefaultPruneEps);

struct LhsPoint {
    int n_centers = 0;
    double gamma = 0.0;
};

/// Latin Hypercube design over (N, gamma): each dimension is split into
/// n_points equal strata holding exactly one sample, strata paired by random
/// permutation. N is drawn continuously on [n_min, n_max + 1) and truncated.
std::vector<LhsPoint> lhs_sample(int n_points, std::pair<int, int> n_range,
                                 std::pair<double, double> gamma_range, std::uint64_t seed);

/// Exponential-mixture density raster over the unit square; cell (ix, iy)
/// holds sum_c exp(-dist(cell center, c) / r0). Rendering background only.
struct DensityRaster {
    int resolution = 0;
    double r0 = 0.0;
    std::vector<double> values;  // row-major, index iy * resolution + ix

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * resolution + ix]; }
};

DensityRaster density_mixture(std::span<const Point> centers, int resolution, double r0);

/// Scenario JSON round-trip (keys: n, seed, centers).
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

}  // namespace physnet
