// Command-line frontend: lattice emission, single-network generation,
// single simulation runs with trajectory dumps, batch experiments, Pareto
// extraction and SVG rendering.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "physnet/errors.hpp"
#include "physnet/experiment.hpp"
#include "physnet/generators.hpp"
#include "physnet/grid.hpp"
#include "physnet/network_io.hpp"
#include "physnet/physarum.hpp"
#include "physnet/postprocess.hpp"
#include "physnet/render.hpp"
#include "physnet/rng.hpp"

namespace {

physnet::GridDims parse_grid(const std::string& s) {
    const auto cross = s.find('x');
    try {
        std::size_t pos = 0;
        physnet::GridDims dims;
        if (cross == std::string::npos) {
            dims.rows = dims.cols = std::stoi(s, &pos);
            if (pos != s.size()) throw physnet::ConfigError("");
        } else {
            dims.rows = std::stoi(s.substr(0, cross), &pos);
            if (pos != cross) throw physnet::ConfigError("");
            const std::string cols = s.substr(cross + 1);
            dims.cols = std::stoi(cols, &pos);
            if (pos != cols.size()) throw physnet::ConfigError("");
        }
        if (dims.rows < 2 || dims.cols < 2)
            throw physnet::ConfigError("grid must be at least 2x2, got '" + s + "'");
        return dims;
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw physnet::ConfigError("cannot parse grid size '" + s + "' (expected ROWSxCOLS)");
}

/// Density backdrop from the network's own center nodes.
physnet::DensityRaster center_density(const physnet::SpatialNetwork& net, int resolution,
                                      double r0) {
    std::vector<physnet::Point> centers;
    for (const int id : net.center_ids()) centers.push_back(net.node(id).pos);
    return physnet::density_mixture(centers, resolution, r0);
}

struct SimulationFlags {
    double gamma = 1.8;
    double dt = 0.05;
    double i0 = 1.0;
    double d0 = 0.5;
    int tf = 1000;
    double prune_eps = physnet::kDefaultPruneEps;
    std::string grid = "15x15";

    void attach(CLI::App* cmd) {
        cmd->add_option("--gamma", gamma, "Reinforcement exponent")->capture_default_str();
        cmd->add_option("--dt", dt, "Euler step size")->capture_default_str();
        cmd->add_option("--i0", i0, "Injected current")->capture_default_str();
        cmd->add_option("--d0", d0, "Initial edge diameter")->capture_default_str();
        cmd->add_option("--tf", tf, "Iteration budget")->capture_default_str();
        cmd->add_option("--prune-eps", prune_eps, "Diameter pruning threshold")
            ->capture_default_str();
        cmd->add_option("--grid", grid, "Lattice size ROWSxCOLS")->capture_default_str();
    }

    physnet::PhysarumParams params() const {
        physnet::PhysarumParams p;
        p.gamma = gamma;
        p.dt = dt;
        p.i0 = i0;
        p.d0 = d0;
        p.t_f = tf;
        return p;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive-flow design of transportation networks"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- grid ----------------------------------------------------------
    auto* grid_cmd = app.add_subcommand("grid", "Emit a lattice network to CSV");
    std::string grid_dims = "15x15", grid_nodes, grid_edges;
    grid_cmd->add_option("--grid", grid_dims, "Lattice size ROWSxCOLS")->capture_default_str();
    grid_cmd->add_option("--nodes", grid_nodes, "Output nodes CSV")->required();
    grid_cmd->add_option("--edges", grid_edges, "Output edges CSV")->required();
    grid_cmd->callback([&] {
        const physnet::GridDims dims = parse_grid(grid_dims);
        physnet::save_network(physnet::build_grid(dims.rows, dims.cols), grid_nodes, grid_edges);
    });

    // ---- generate ------------------------------------------------------
    auto* gen_cmd =
        app.add_subcommand("generate", "Generate one network from a scenario");
    std::string gen_scenario, gen_save_scenario, gen_generator = "slime";
    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_nodes, gen_edges, gen_svg;
    bool gen_density = false;
    SimulationFlags gen_sim;
    gen_cmd->add_option("--scenario", gen_scenario, "Scenario JSON to load");
    gen_cmd->add_option("--n", gen_n, "Sample a fresh scenario with this many centers");
    gen_cmd->add_option("--seed", gen_seed, "Seed for a fresh scenario")->capture_default_str();
    gen_cmd->add_option("--save-scenario", gen_save_scenario, "Write the scenario JSON here");
    gen_cmd->add_option("--generator", gen_generator, "complete, tree or slime")
        ->capture_default_str();
    gen_cmd->add_option("--nodes", gen_nodes, "Output nodes CSV")->required();
    gen_cmd->add_option("--edges", gen_edges, "Output edges CSV")->required();
    gen_cmd->add_option("--svg", gen_svg, "Optional SVG rendering");
    gen_cmd->add_flag("--density", gen_density, "Grayscale density backdrop in the SVG");
    gen_sim.attach(gen_cmd);
    gen_cmd->callback([&] {
        physnet::Scenario scenario;
        if (!gen_scenario.empty()) {
            scenario = physnet::load_scenario(gen_scenario);
        } else if (gen_n >= 2) {
            scenario = physnet::sample_centers(gen_n, gen_seed);
        } else {
            throw physnet::ConfigError("pass --scenario FILE or --n N (with --seed)");
        }
        if (!gen_save_scenario.empty()) physnet::save_scenario(scenario, gen_save_scenario);

        physnet::SpatialNetwork net;
        const physnet::Generator kind = physnet::generator_from_string(gen_generator);
        switch (kind) {
            case physnet::Generator::Complete:
                net = physnet::complete_network(scenario);
                break;
            case physnet::Generator::Tree:
                net = physnet::tree_network(scenario);
                break;
            case physnet::Generator::Slime: {
                const physnet::SlimeResult res = physnet::slime_network(
                    scenario, gen_sim.params(), parse_grid(gen_sim.grid), gen_sim.prune_eps);
                if (!res.connected)
                    std::cerr << "warning: centers are not mutually connected after pruning\n";
                std::cout << "simulation finished after " << res.iterations << " iterations\n";
                net = res.net;
                break;
            }
        }
        physnet::save_network(net, gen_nodes, gen_edges);
        if (!gen_svg.empty()) {
            physnet::RenderOptions opt;
            physnet::DensityRaster raster;
            if (gen_density) {
                raster = physnet::density_mixture(scenario.centers, 160, 0.1);
                opt.background = &raster;
            }
            physnet::render_svg(net, gen_svg, opt);
        }
        const physnet::IndicatorPair ind =
            physnet::evaluate_indicators(net, scenario.centers);
        std::cout << "length_rel=" << physnet::format_double(ind.length_rel)
                  << " perf_rel=" << physnet::format_double(ind.perf_rel)
                  << " valid=" << (ind.valid ? "true" : "false") << '\n';
    });

    // ---- run -----------------------------------------------------------
    auto* run_cmd =
        app.add_subcommand("run", "Single adaptive-flow run with a trajectory dump");
    std::string run_scenario, run_trajectory, run_nodes, run_edges;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false, run_post = false;
    SimulationFlags run_sim;
    run_cmd->add_option("--scenario", run_scenario, "Scenario JSON")->required();
    run_cmd->add_option("--seed", run_seed, "Override the scenario seed")
        ->each([&](const std::string&) { run_seed_set = true; });
    run_cmd->add_option("--trajectory", run_trajectory, "Per-step trajectory CSV");
    run_cmd->add_option("--nodes", run_nodes, "Output nodes CSV (final network)");
    run_cmd->add_option("--edges", run_edges, "Output edges CSV (final network)");
    run_cmd->add_flag("--post", run_post, "Prune, filter and contract the final network");
    run_sim.attach(run_cmd);
    run_cmd->callback([&] {
        physnet::Scenario scenario = physnet::load_scenario(run_scenario);
        if (run_seed_set) scenario.seed = run_seed;
        scenario.validate();
        const physnet::GridDims dims = parse_grid(run_sim.grid);
        const physnet::PhysarumParams params = run_sim.params();
        params.validate();

        physnet::SpatialNetwork lattice = physnet::snap_centers(
            physnet::build_grid(dims.rows, dims.cols), scenario.centers);
        lattice.set_all_diameters(params.d0);

        std::ofstream traj;
        physnet::StepObserver observer;
        if (!run_trajectory.empty()) {
            traj.open(run_trajectory, std::ios::binary);
            if (!traj) throw physnet::IoError("cannot write trajectory file " + run_trajectory);
            traj << "step,diameter_change,active_length\n";
            observer = [&traj](int step, double change, double active_length) {
                traj << step << ',' << physnet::format_double(change) << ','
                     << physnet::format_double(active_length) << '\n';
            };
        }

        const std::uint64_t sim_seed =
            physnet::derive_seed(scenario.seed, {physnet::kStreamScheduler});
        physnet::PhysarumResult result = physnet::run(
            std::move(lattice), params, physnet::FlowScheduler::multi_center(), sim_seed,
            observer);
        if (traj.is_open() && !traj.flush())
            throw physnet::IoError("failed writing trajectory file " + run_trajectory);

        std::cout << "iterations=" << result.iterations;
        physnet::SpatialNetwork final_net = std::move(result.net);
        if (run_post) {
            physnet::PostprocessResult post =
                physnet::postprocess_pipeline(final_net, run_sim.prune_eps);
            final_net = std::move(post.net);
            std::cout << " connected=" << (post.connected ? "true" : "false");
        }
        std::cout << " total_length=" << physnet::format_double(final_net.total_length())
                  << '\n';
        if (!run_nodes.empty() || !run_edges.empty()) {
            if (run_nodes.empty() || run_edges.empty())
                throw physnet::ConfigError("--nodes and --edges must be passed together");
            physnet::save_network(final_net, run_nodes, run_edges);
        }
    });

    // ---- experiment ------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "LHS x replication x generator batch");
    physnet::ExperimentConfig config;
    std::string exp_grid = "15x15";
    exp_cmd->add_option("--lhs", config.n_lhs, "Number of design points")->capture_default_str();
    exp_cmd->add_option("--reps", config.n_reps, "Replications per design point")
        ->capture_default_str();
    exp_cmd->add_option("--n-min", config.n_range.first, "Minimum number of centers")
        ->capture_default_str();
    exp_cmd->add_option("--n-max", config.n_range.second, "Maximum number of centers")
        ->capture_default_str();
    exp_cmd->add_option("--gamma-min", config.gamma_range.first, "Lower gamma bound")
        ->capture_default_str();
    exp_cmd->add_option("--gamma-max", config.gamma_range.second, "Upper gamma bound")
        ->capture_default_str();
    exp_cmd->add_option("--grid", exp_grid, "Lattice size ROWSxCOLS")->capture_default_str();
    exp_cmd->add_option("--tf", config.params.t_f, "Iteration budget per run")
        ->capture_default_str();
    exp_cmd->add_option("--seed", config.root_seed, "Root seed")->capture_default_str();
    exp_cmd->add_option("--workers", config.workers, "Parallel workers")->capture_default_str();
    exp_cmd->add_option("--out", config.out_path, "Output records CSV")->required();
    exp_cmd->add_flag("--timing", config.record_timing,
                      "Record wall times (breaks byte-level reproducibility)");
    exp_cmd->callback([&] {
        config.grid = parse_grid(exp_grid);
        const std::vector<physnet::RunRecord> records = physnet::run_experiment(config);
        std::size_t invalid = 0;
        for (const physnet::RunRecord& r : records)
            if (!r.valid) ++invalid;
        std::cout << records.size() << " records written to " << config.out_path << " ("
                  << invalid << " invalid)\n";
        if (invalid > 0) exit_code = 3;
    });

    // ---- pareto ----------------------------------------------------------
    auto* pareto_cmd = app.add_subcommand("pareto", "Extract the non-dominated records");
    std::string pareto_in, pareto_out;
    pareto_cmd->add_option("--in", pareto_in, "Records CSV")->required();
    pareto_cmd->add_option("--out", pareto_out, "Front CSV")->required();
    pareto_cmd->callback([&] {
        const std::size_t n = physnet::extract_pareto_file(pareto_in, pareto_out);
        std::cout << n << " front records written to " << pareto_out << '\n';
    });

    // ---- render ----------------------------------------------------------
    auto* render_cmd = app.add_subcommand("render", "SVG rendering");
    render_cmd->require_subcommand(1);

    auto* rnet_cmd = render_cmd->add_subcommand("network", "Draw a network file");
    std::string rnet_nodes, rnet_edges, rnet_out;
    bool rnet_density = false;
    int rnet_res = 160;
    double rnet_r0 = 0.1;
    rnet_cmd->add_option("--nodes", rnet_nodes, "Nodes CSV")->required();
    rnet_cmd->add_option("--edges", rnet_edges, "Edges CSV")->required();
    rnet_cmd->add_option("--out", rnet_out, "Output SVG")->required();
    rnet_cmd->add_flag("--density", rnet_density, "Grayscale density backdrop");
    rnet_cmd->add_option("--density-res", rnet_res, "Backdrop raster resolution")
        ->capture_default_str();
    rnet_cmd->add_option("--density-r0", rnet_r0, "Backdrop decay range")->capture_default_str();
    rnet_cmd->callback([&] {
        const physnet::SpatialNetwork net = physnet::load_network(rnet_nodes, rnet_edges);
        physnet::RenderOptions opt;
        physnet::DensityRaster raster;
        if (rnet_density) {
            raster = center_density(net, rnet_res, rnet_r0);
            opt.background = &raster;
        }
        physnet::render_svg(net, rnet_out, opt);
    });

    auto* rpar_cmd = render_cmd->add_subcommand("pareto", "Scatter of the two indicators");
    std::string rpar_in, rpar_out;
    bool rpar_no_front = false;
    rpar_cmd->add_option("--in", rpar_in, "Records CSV")->required();
    rpar_cmd->add_option("--out", rpar_out, "Output SVG")->required();
    rpar_cmd->add_flag("--no-front", rpar_no_front, "Skip the front overlay rings");
    rpar_cmd->callback([&] {
        const std::vector<physnet::RunRecord> records = physnet::read_records_csv(rpar_in);
        physnet::ParetoRenderOptions opt;
        opt.show_front = !rpar_no_front;
        physnet::render_pareto_svg(records, rpar_out, opt);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const physnet::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const physnet::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
