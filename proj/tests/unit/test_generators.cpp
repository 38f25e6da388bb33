#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"

#include "physnet/errors.hpp"
#include "physnet/generators.hpp"
#include "physnet/grid.hpp"
#include "physnet/rng.hpp"
#include "physnet/spatial_network.hpp"
#include "support/oracles.hpp"

using namespace physnet;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("physnet_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

Scenario fixed_scenario(std::vector<Point> centers, std::uint64_t seed = 0) {
    Scenario s;
    s.centers = std::move(centers);
    s.seed = seed;
    return s;
}

/// Undirected edge set with endpoints normalized to (min, max).
std::set<std::pair<int, int>> edge_pairs(const SpatialNetwork& net) {
    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : net.edges())
        pairs.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
    return pairs;
}

bool all_pairs_reachable(const SpatialNetwork& net) {
    const auto dist = oracles::all_pairs_shortest_paths(net);
    for (const auto& [src, row] : dist)
        for (const auto& [dst, d] : row)
            if (!std::isfinite(d)) return false;
    return true;
}

}  // namespace

TEST_CASE("sample_centers is deterministic in the seed") {
    const Scenario a = sample_centers(5, 42);
    const Scenario b = sample_centers(5, 42);
    REQUIRE(a.centers.size() == 5);
    CHECK(a.seed == 42);
    CHECK(b.seed == 42);
    for (std::size_t i = 0; i < a.centers.size(); ++i) {
        CHECK(a.centers[i].x == b.centers[i].x);
        CHECK(a.centers[i].y == b.centers[i].y);
    }

    const Scenario c = sample_centers(5, 43);
    bool any_differs = false;
    for (std::size_t i = 0; i < a.centers.size(); ++i)
        if (a.centers[i].x != c.centers[i].x || a.centers[i].y != c.centers[i].y)
            any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("sample_centers rejects fewer than two centers") {
    CHECK_THROWS_AS(sample_centers(1, 0), ConfigError);
    CHECK_THROWS_AS(sample_centers(0, 0), ConfigError);
    CHECK_THROWS_AS(sample_centers(-3, 0), ConfigError);
}

TEST_CASE("sample_centers keeps centers inside the margin and distinct") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Scenario s = sample_centers(6, seed);
        for (const Point& p : s.centers) {
            CHECK(p.x >= kCenterMargin);
            CHECK(p.x <= 1.0 - kCenterMargin);
            CHECK(p.y >= kCenterMargin);
            CHECK(p.y <= 1.0 - kCenterMargin);
        }
        for (std::size_t i = 0; i < s.centers.size(); ++i)
            for (std::size_t j = i + 1; j < s.centers.size(); ++j)
                CHECK(distance(s.centers[i], s.centers[j]) > 0.0);
    }
}

TEST_CASE("sample_centers draws uniformly over the allowed square") {
    // 10^4 points; the sample mean of U[0.05, 0.95] has sd ~ 0.0026, so a
    // 0.01 tolerance around 0.5 is a ~4 sigma band.
    const int n_scenarios = 2500;
    double sum_x = 0.0, sum_y = 0.0;
    double min_x = 1.0, max_x = 0.0;
    int count = 0;
    for (int k = 0; k < n_scenarios; ++k) {
        const Scenario s = sample_centers(4, 1000 + static_cast<std::uint64_t>(k));
        for (const Point& p : s.centers) {
            sum_x += p.x;
            sum_y += p.y;
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            ++count;
        }
    }
    CHECK(count == 10000);
    CHECK(std::abs(sum_x / count - 0.5) < 0.01);
    CHECK(std::abs(sum_y / count - 0.5) < 0.01);
    // The draws should actually spread across the square, not cluster.
    CHECK(min_x < 0.06);
    CHECK(max_x > 0.94);
}

TEST_CASE("complete_network links every pair of centers") {
    const Scenario s4 = sample_centers(4, 7);
    const SpatialNetwork net4 = complete_network(s4);
    CHECK(net4.node_count() == 4);
    CHECK(net4.edge_count() == 6);

    const SpatialNetwork net2 = complete_network(sample_centers(2, 7));
    CHECK(net2.edge_count() == 1);

    CHECK(complete_network(sample_centers(5, 7)).edge_count() == 10);

    for (const Node& node : net4.nodes()) CHECK(node.kind == NodeKind::Center);
    for (const Edge& e : net4.edges()) {
        CHECK(e.length == distance(net4.node(e.src).pos, net4.node(e.dst).pos));
        CHECK(e.diameter == 1.0);
        CHECK(e.impedance == 1.0);
    }
}

TEST_CASE("complete_network on a right triangle has the expected geometry") {
    const Scenario s = fixed_scenario({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    const SpatialNetwork net = complete_network(s);
    REQUIRE(net.edge_count() == 3);

    std::vector<double> lengths;
    for (const Edge& e : net.edges()) lengths.push_back(e.length);
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths[0] == doctest::Approx(1.0));
    CHECK(lengths[1] == doctest::Approx(1.0));
    CHECK(lengths[2] == doctest::Approx(std::sqrt(2.0)));
    CHECK(net.total_length() == doctest::Approx(2.0 + std::sqrt(2.0)));
}

TEST_CASE("tree_network connects collinear centers through the middle") {
    const Scenario s = fixed_scenario({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
    const SpatialNetwork net = tree_network(s);
    CHECK(net.edge_count() == 2);
    CHECK(edge_pairs(net) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
    // The direct 0-2 link (length 2) is skipped; the tree routes through 1.
    CHECK(net.total_length() == doctest::Approx(2.0));
}

TEST_CASE("tree_network with two centers is the single direct link") {
    const Scenario s = sample_centers(2, 99);
    const SpatialNetwork tree = tree_network(s);
    const SpatialNetwork complete = complete_network(s);
    CHECK(tree.edge_count() == 1);
    CHECK(edge_pairs(tree) == edge_pairs(complete));
    CHECK(tree.total_length() == doctest::Approx(complete.total_length()));
}

TEST_CASE("tree_network matches the minimum spanning tree on random configurations") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));  // 2..8 centers
        std::vector<Point> points;
        points.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            points.push_back({rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)});

        const SpatialNetwork net = tree_network(fixed_scenario(points));

        // Spanning and acyclic: n-1 edges, everything reachable.
        REQUIRE(net.edge_count() == static_cast<std::size_t>(n - 1));
        CHECK(all_pairs_reachable(net));

        // Exact agreement with an independent Prim construction.
        const auto expected = oracles::prim_mst(points);
        CHECK(edge_pairs(net) == std::set<std::pair<int, int>>(expected.begin(), expected.end()));

        // And with brute-force enumeration over all spanning trees.
        const double best = oracles::exhaustive_mst_length(points);
        CHECK(net.total_length() == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("tree_network is never longer than the complete network") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Scenario s = sample_centers(2 + static_cast<int>(seed % 5), seed);
        CHECK(tree_network(s).total_length() <=
              complete_network(s).total_length() + 1e-12);
    }
}

TEST_CASE("baseline generators reject invalid scenarios") {
    CHECK_THROWS_AS(complete_network(fixed_scenario({{0.5, 0.5}})), ConfigError);
    CHECK_THROWS_AS(tree_network(fixed_scenario({{0.5, 0.5}})), ConfigError);
    CHECK_THROWS_AS(complete_network(fixed_scenario({{0.5, 0.5}, {0.5, 0.5}})), ConfigError);
}

TEST_CASE("slime_network is deterministic and reports connectivity") {
    const Scenario s = sample_centers(2, 11);
    PhysarumParams params;
    params.gamma = 1.8;
    params.t_f = 150.0;

    const SlimeResult a = slime_network(s, params, GridDims{11, 11});
    const SlimeResult b = slime_network(s, params, GridDims{11, 11});

    CHECK(a.connected);
    CHECK(a.iterations == b.iterations);
    CHECK(a.connected == b.connected);
    CHECK(networks_equal(a.net, b.net));

    // Both centers survive postprocessing.
    CHECK(a.net.center_ids().size() == 2);
    // Pruning removed the faint edges: everything left is above threshold.
    for (const Edge& e : a.net.edges()) CHECK(e.diameter >= kDefaultPruneEps);
}

TEST_CASE("slime_network with zero duration keeps the whole grid") {
    const Scenario s = sample_centers(3, 5);
    PhysarumParams params;
    params.t_f = 0.0;

    const SlimeResult r = slime_network(s, params, GridDims{11, 11});
    const SpatialNetwork reference = build_grid(11, 11);

    CHECK(r.iterations == 0);
    CHECK(r.connected);
    // Uniform diameters: nothing pruned, nothing contracted (grid nodes have
    // degree >= 3), so the snapped grid survives unchanged.
    CHECK(r.net.node_count() == reference.node_count());
    CHECK(r.net.edge_count() == reference.edge_count());
    for (const Edge& e : r.net.edges()) CHECK(e.diameter == 0.5);
    CHECK(r.net.center_ids().size() == 3);
}

TEST_CASE("lhs_sample fills every stratum exactly once") {
    for (const int n_points : {5, 50, 100}) {
        const auto design = lhs_sample(n_points, {2, 6}, {0.5, 2.5}, 77);
        REQUIRE(design.size() == static_cast<std::size_t>(n_points));

        std::vector<int> gamma_hits(static_cast<std::size_t>(n_points), 0);
        const double width = (2.5 - 0.5) / n_points;
        for (const LhsPoint& p : design) {
            REQUIRE(p.gamma > 0.5);
            REQUIRE(p.gamma < 2.5);
            const int stratum = static_cast<int>(std::floor((p.gamma - 0.5) / width));
            REQUIRE(stratum >= 0);
            REQUIRE(stratum < n_points);
            ++gamma_hits[static_cast<std::size_t>(stratum)];
        }
        for (const int hits : gamma_hits) CHECK(hits == 1);
    }
}

TEST_CASE("lhs_sample covers each center count once when strata align") {
    // Five points over N in {2..6}: each stratum spans exactly one integer.
    const auto design = lhs_sample(5, {2, 6}, {0.5, 2.5}, 123);
    std::multiset<int> counts;
    for (const LhsPoint& p : design) counts.insert(p.n_centers);
    CHECK(counts == std::multiset<int>{2, 3, 4, 5, 6});
}

TEST_CASE("lhs_sample is deterministic and respects the ranges") {
    const auto a = lhs_sample(40, {3, 9}, {0.8, 1.4}, 5);
    const auto b = lhs_sample(40, {3, 9}, {0.8, 1.4}, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n_centers == b[i].n_centers);
        CHECK(a[i].gamma == b[i].gamma);
        CHECK(a[i].n_centers >= 3);
        CHECK(a[i].n_centers <= 9);
        CHECK(a[i].gamma > 0.8);
        CHECK(a[i].gamma < 1.4);
    }

    const auto c = lhs_sample(40, {3, 9}, {0.8, 1.4}, 6);
    bool any_differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].n_centers != c[i].n_centers || a[i].gamma != c[i].gamma) any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("lhs_sample rejects invalid arguments") {
    CHECK_THROWS_AS(lhs_sample(0, {2, 6}, {0.5, 2.5}, 0), ConfigError);
    CHECK_THROWS_AS(lhs_sample(10, {1, 6}, {0.5, 2.5}, 0), ConfigError);   // N must start >= 2
    CHECK_THROWS_AS(lhs_sample(10, {6, 2}, {0.5, 2.5}, 0), ConfigError);   // empty N range
    CHECK_THROWS_AS(lhs_sample(10, {2, 6}, {0.0, 2.5}, 0), ConfigError);   // gamma must be > 0
    CHECK_THROWS_AS(lhs_sample(10, {2, 6}, {2.5, 0.5}, 0), ConfigError);   // empty gamma range
}

TEST_CASE("density_mixture puts unit weight at a centered cell") {
    // Cell centers for resolution 10 sit at 0.05, 0.15, ..., so these two
    // centers land exactly on cells (2, 3) and (7, 3).
    const std::vector<Point> centers{{0.25, 0.35}, {0.75, 0.35}};
    const DensityRaster raster = density_mixture(centers, 10, 0.1);

    REQUIRE(raster.resolution == 10);
    REQUIRE(raster.values.size() == 100);
    const double cross = std::exp(-0.5 / 0.1);  // the other center, 0.5 away
    CHECK(raster.at(2, 3) == doctest::Approx(1.0 + cross).epsilon(1e-14));
    CHECK(raster.at(7, 3) == doctest::Approx(1.0 + cross).epsilon(1e-14));
}

TEST_CASE("density_mixture decays monotonically away from a single center") {
    const std::vector<Point> centers{{0.25, 0.35}};
    const DensityRaster raster = density_mixture(centers, 10, 0.1);
    CHECK(raster.at(2, 3) == doctest::Approx(1.0).epsilon(1e-14));
    for (int ix = 2; ix < 9; ++ix) CHECK(raster.at(ix, 3) > raster.at(ix + 1, 3));
    for (int ix = 2; ix > 0; --ix) CHECK(raster.at(ix, 3) > raster.at(ix - 1, 3));
    for (int iy = 3; iy < 9; ++iy) CHECK(raster.at(2, iy) > raster.at(2, iy + 1));
}

TEST_CASE("density_mixture is symmetric for mirrored centers") {
    const std::vector<Point> centers{{0.3, 0.5}, {0.7, 0.5}};
    const int res = 16;
    const DensityRaster raster = density_mixture(centers, res, 0.15);
    for (int iy = 0; iy < res; ++iy)
        for (int ix = 0; ix < res; ++ix)
            CHECK(raster.at(ix, iy) ==
                  doctest::Approx(raster.at(res - 1 - ix, iy)).epsilon(1e-12));
}

TEST_CASE("density_mixture rejects invalid arguments") {
    const std::vector<Point> centers{{0.5, 0.5}, {0.2, 0.2}};
    CHECK_THROWS_AS(density_mixture(centers, 0, 0.1), ConfigError);
    CHECK_THROWS_AS(density_mixture(centers, 10, 0.0), ConfigError);
    CHECK_THROWS_AS(density_mixture(centers, 10, -1.0), ConfigError);
}

TEST_CASE("scenario files round-trip exactly") {
    const auto dir = scratch_dir("scenario_roundtrip");
    const Scenario original = sample_centers(4, 31337);
    const auto path = (dir / "scenario.json").string();
    save_scenario(original, path);

    const Scenario loaded = load_scenario(path);
    CHECK(loaded.seed == original.seed);
    REQUIRE(loaded.centers.size() == original.centers.size());
    for (std::size_t i = 0; i < loaded.centers.size(); ++i) {
        CHECK(loaded.centers[i].x == original.centers[i].x);
        CHECK(loaded.centers[i].y == original.centers[i].y);
    }
}

TEST_CASE("scenario loading validates the file") {
    const auto dir = scratch_dir("scenario_errors");

    CHECK_THROWS_AS(load_scenario((dir / "missing.json").string()), IoError);

    const auto bad_json = dir / "bad.json";
    write_text(bad_json, "{not json");
    CHECK_THROWS_AS(load_scenario(bad_json.string()), ParseError);

    const auto mismatch = dir / "mismatch.json";
    write_text(mismatch, R"({"n": 3, "seed": 1, "centers": [[0.2, 0.3], [0.7, 0.8]]})");
    CHECK_THROWS_AS(load_scenario(mismatch.string()), ConfigError);

    const auto too_few = dir / "toofew.json";
    write_text(too_few, R"({"n": 1, "seed": 1, "centers": [[0.2, 0.3]]})");
    CHECK_THROWS_AS(load_scenario(too_few.string()), ConfigError);

    const auto no_centers = dir / "nocenters.json";
    write_text(no_centers, R"({"seed": 1})");
    CHECK_THROWS_AS(load_scenario(no_centers.string()), ParseError);
}
