#include "physnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "physnet/grid.hpp"
#include "physnet/rng.hpp"

#include <json.hpp>

namespace physnet {

void Scenario::validate() const {
    if (centers.size() < 2)
        throw ConfigError("scenario needs at least 2 centers, has " +
                          std::to_string(centers.size()));
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (!std::isfinite(centers[i].x) || !std::isfinite(centers[i].y))
            throw ConfigError("center " + std::to_string(i) + " has non-finite coordinates");
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (centers[i] == centers[j])
                throw ConfigError("centers " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide");
    }
}

Scenario sample_centers(int n, std::uint64_t seed) {
    if (n < 2) throw ConfigError("need at least 2 centers, requested " + std::to_string(n));
    Rng rng(seed);
    Scenario scenario;
    scenario.seed = seed;
    scenario.centers.reserve(static_cast<std::size_t>(n));
    while (scenario.centers.size() < static_cast<std::size_t>(n)) {
        const Point p{rng.uniform(kCenterMargin, 1.0 - kCenterMargin),
                      rng.uniform(kCenterMargin, 1.0 - kCenterMargin)};
        // Exact duplicates have probability ~0 but would break downstream
        // invariants; redraw.
        if (std::find(scenario.centers.begin(), scenario.centers.end(), p) ==
            scenario.centers.end())
            scenario.centers.push_back(p);
    }
    return scenario;
}

SpatialNetwork complete_network(const Scenario& scenario) {
    scenario.validate();
    SpatialNetwork net;
    for (int i = 0; i < scenario.n(); ++i)
        net.add_node(i, scenario.centers[i], NodeKind::Center);
    for (int i = 0; i < scenario.n(); ++i)
        for (int j = i + 1; j < scenario.n(); ++j)
            net.add_edge(i, j, std::nullopt, 1.0);
    return net;
}

SpatialNetwork tree_network(const Scenario& scenario) {
    scenario.validate();
    SpatialNetwork net;
    const int n = scenario.n();
    for (int i = 0; i < n; ++i) net.add_node(i, scenario.centers[i], NodeKind::Center);

    // Single-linkage merging: repeatedly join the two components whose
    // closest node pair is globally minimal.
    std::vector<int> component(static_cast<std::size_t>(n));
    std::iota(component.begin(), component.end(), 0);
    for (int added = 0; added < n - 1; ++added) {
        double best = std::numeric_limits<double>::infinity();
        int best_i = -1, best_j = -1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (component[i] == component[j]) continue;
                const double d = distance(scenario.centers[i], scenario.centers[j]);
                if (d < best) {
                    best = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        net.add_edge(best_i, best_j, std::nullopt, 1.0);
        const int from = component[best_j], to = component[best_i];
        for (auto& c : component)
            if (c == from) c = to;
    }
    return net;
}

SlimeResult slime_network(const Scenario& scenario, const PhysarumParams& params,
                          GridDims grid, double prune_eps) {
    scenario.validate();
    params.validate();
    SpatialNetwork lattice = snap_centers(build_grid(grid.rows, grid.cols), scenario.centers);
    lattice.set_all_diameters(params.d0);
    PhysarumResult sim = run(std::move(lattice), params, FlowScheduler::multi_center(),
                             derive_seed(scenario.seed, {kStreamScheduler}));
    PostprocessResult post = postprocess_pipeline(sim.net, prune_eps);
    return SlimeResult{std::move(post.net), post.connected, sim.iterations};
}

std::vector<LhsPoint> lhs_sample(int n_points, std::pair<int, int> n_range,
                                 std::pair<double, double> gamma_range, std::uint64_t seed) {
    if (n_points < 1) throw ConfigError("lhs_sample needs n_points >= 1");
    if (n_range.first < 2 || n_range.second < n_range.first)
        throw ConfigError("invalid center-count range");
    if (!(gamma_range.first > 0.0) || gamma_range.second < gamma_range.first)
        throw ConfigError("invalid gamma range");

    Rng rng(seed);
    const auto permutation = [&rng](int count) {
        std::vector<int> p(static_cast<std::size_t>(count));
        std::iota(p.begin(), p.end(), 0);
        for (int i = count - 1; i > 0; --i)
            std::swap(p[static_cast<std::size_t>(i)],
                      p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        return p;
    };
    // Draw order is pinned: the N permutation, the gamma permutation, then
    // one (u_n, u_gamma) pair per point.
    const std::vector<int> perm_n = permutation(n_points);
    const std::vector<int> perm_gamma = permutation(n_points);

    const double n_lo = static_cast<double>(n_range.first);
    const double n_hi = static_cast<double>(n_range.second) + 1.0;
    std::vector<LhsPoint> design;
    design.reserve(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double u_n = rng.uniform01();
        const double u_gamma = rng.uniform01();
        const double n_value =
            n_lo + (n_hi - n_lo) * (static_cast<double>(perm_n[k]) + u_n) / n_points;
        const double gamma =
            gamma_range.first + (gamma_range.second - gamma_range.first) *
                                    (static_cast<double>(perm_gamma[k]) + u_gamma) / n_points;
        const int n_centers = std::min(static_cast<int>(std::floor(n_value)), n_range.second);
        design.push_back(LhsPoint{n_centers, gamma});
    }
    return design;
}

DensityRaster density_mixture(std::span<const Point> centers, int resolution, double r0) {
    if (resolution < 1) throw ConfigError("raster resolution must be >= 1");
    if (!(r0 > 0.0)) throw ConfigError("mixture decay r0 must be > 0");
    DensityRaster raster;
    raster.resolution = resolution;
    raster.r0 = r0;
    raster.values.resize(static_cast<std::size_t>(resolution) * resolution, 0.0);
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const Point cell{(ix + 0.5) / resolution, (iy + 0.5) / resolution};
            double value = 0.0;
            for (const Point& c : centers) value += std::exp(-distance(cell, c) / r0);
            raster.values[static_cast<std::size_t>(iy) * resolution + ix] = value;
        }
    }
    return raster;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path, 1, std::string("invalid JSON: ") + e.what());
    }
    Scenario scenario;
    try {
        scenario.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& c : j.at("centers"))
            scenario.centers.push_back(Point{c.at(0).get<double>(), c.at(1).get<double>()});
        if (j.contains("n") && j["n"].get<int>() != scenario.n())
            throw ConfigError("scenario field n does not match the number of centers");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(path, 1, std::string("invalid scenario: ") + e.what());
    }
    scenario.validate();
    return scenario;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    scenario.validate();
    nlohmann::json j;
    j["n"] = scenario.n();
    j["seed"] = scenario.seed;
    auto centers = nlohmann::json::array();
    for (const Point& c : scenario.centers) centers.push_back({c.x, c.y});
    j["centers"] = centers;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write scenario file " + path);
    out << j.dump(2) << '\n';
    if (!out.flush()) throw IoError("failed writing scenario file " + path);
}

}  // namespace physnet
