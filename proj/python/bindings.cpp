// Python bindings for the core operations: network construction, the
// adaptive-flow simulation, postprocessing, indicators and the batch
// experiment driver.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "physnet/errors.hpp"
#include "physnet/experiment.hpp"
#include "physnet/generators.hpp"
#include "physnet/grid.hpp"
#include "physnet/metrics.hpp"
#include "physnet/network_io.hpp"
#include "physnet/physarum.hpp"
#include "physnet/postprocess.hpp"
#include "physnet/render.hpp"
#include "physnet/rng.hpp"

namespace py = pybind11;
using namespace physnet;

PYBIND11_MODULE(_physnet, m) {
    m.doc() = "Adaptive-flow design of transportation networks";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<ParseError>(m, "FileParseError", PyExc_ValueError);
    py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_RuntimeError);

    // ---- geometry and network ------------------------------------------
    py::class_<Point>(m, "Point")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y)
        .def("__repr__", [](const Point& p) {
            return "Point(" + format_double(p.x) + ", " + format_double(p.y) + ")";
        });
    m.def("distance", &distance, py::arg("a"), py::arg("b"));

    py::enum_<NodeKind>(m, "NodeKind")
        .value("Regular", NodeKind::Regular)
        .value("Center", NodeKind::Center);

    py::class_<Node>(m, "Node")
        .def_readonly("id", &Node::id)
        .def_readonly("pos", &Node::pos)
        .def_readonly("kind", &Node::kind);

    py::class_<Edge>(m, "Edge")
        .def_readonly("src", &Edge::src)
        .def_readonly("dst", &Edge::dst)
        .def_readonly("length", &Edge::length)
        .def_readonly("diameter", &Edge::diameter)
        .def_readonly("impedance", &Edge::impedance)
        .def_readonly("flow", &Edge::flow);

    py::class_<SpatialNetwork>(m, "SpatialNetwork")
        .def(py::init<>())
        .def("add_node", &SpatialNetwork::add_node, py::arg("id"), py::arg("pos"),
             py::arg("kind") = NodeKind::Regular)
        .def("add_edge", &SpatialNetwork::add_edge, py::arg("src"), py::arg("dst"),
             py::arg("length") = std::nullopt, py::arg("diameter") = 0.0,
             py::arg("impedance") = 1.0)
        .def("node_count", &SpatialNetwork::node_count)
        .def("edge_count", &SpatialNetwork::edge_count)
        .def("nodes", [](const SpatialNetwork& n) {
            return std::vector<Node>(n.nodes().begin(), n.nodes().end());
        })
        .def("edges", [](const SpatialNetwork& n) {
            return std::vector<Edge>(n.edges().begin(), n.edges().end());
        })
        .def("center_ids", &SpatialNetwork::center_ids)
        .def("degree", &SpatialNetwork::degree, py::arg("node_id"))
        .def("total_length", &SpatialNetwork::total_length)
        .def("set_all_diameters", &SpatialNetwork::set_all_diameters, py::arg("diameter"))
        .def("set_kind", &SpatialNetwork::set_kind, py::arg("node_id"), py::arg("kind"));

    py::class_<Rect>(m, "Rect")
        .def(py::init<double, double, double, double>(), py::arg("x0"), py::arg("y0"),
             py::arg("x1"), py::arg("y1"))
        .def_readwrite("x0", &Rect::x0)
        .def_readwrite("y0", &Rect::y0)
        .def_readwrite("x1", &Rect::x1)
        .def_readwrite("y1", &Rect::y1);
    m.def("build_grid", &build_grid, py::arg("rows"), py::arg("cols"),
          py::arg("extent") = unit_square());
    m.def("snap_centers",
          [](SpatialNetwork net, const std::vector<Point>& centers) {
              return snap_centers(std::move(net), centers);
          },
          py::arg("net"), py::arg("centers"));
    m.def("load_network", &load_network, py::arg("nodes_path"), py::arg("edges_path"));
    m.def("save_network", &save_network, py::arg("net"), py::arg("nodes_path"),
          py::arg("edges_path"));

    // ---- simulation -----------------------------------------------------
    py::class_<PhysarumParams>(m, "PhysarumParams")
        .def(py::init<>())
        .def_readwrite("gamma", &PhysarumParams::gamma)
        .def_readwrite("dt", &PhysarumParams::dt)
        .def_readwrite("i0", &PhysarumParams::i0)
        .def_readwrite("z_default", &PhysarumParams::z_default)
        .def_readwrite("d0", &PhysarumParams::d0)
        .def_readwrite("t_f", &PhysarumParams::t_f)
        .def_readwrite("eps_conv", &PhysarumParams::eps_conv)
        .def("validate", &PhysarumParams::validate);

    py::class_<FlowScenario>(m, "FlowScenario")
        .def(py::init<>())
        .def_static("source_sink", &FlowScenario::source_sink, py::arg("source"),
                    py::arg("sink"), py::arg("i0"))
        .def("set_current", &FlowScenario::set_current, py::arg("node_id"), py::arg("current"))
        .def("current", &FlowScenario::current, py::arg("node_id"))
        .def("currents", &FlowScenario::currents)
        .def("scale", &FlowScenario::scale)
        .def("validate", &FlowScenario::validate);

    py::class_<PressureField>(m, "PressureField")
        .def_readonly("pressure", &PressureField::pressure)
        .def_readonly("gauge_id", &PressureField::gauge_id)
        .def("at", &PressureField::at, py::arg("node_id"));

    py::class_<FlowScheduler>(m, "FlowScheduler")
        .def_static("multi_center", &FlowScheduler::multi_center)
        .def_static("random_pair", &FlowScheduler::random_pair)
        .def_static("fixed", &FlowScheduler::fixed, py::arg("scenario"));

    py::class_<PhysarumResult>(m, "PhysarumResult")
        .def_readonly("net", &PhysarumResult::net)
        .def_readonly("iterations", &PhysarumResult::iterations);

    m.def("conductance", &conductance, py::arg("edge"));
    m.def("solve_pressures", &solve_pressures, py::arg("net"), py::arg("scenario"));
    m.def("compute_flows", &compute_flows, py::arg("net"), py::arg("pressures"));
    m.def("update_diameters", &update_diameters, py::arg("net"), py::arg("params"));
    m.def(
        "run",
        [](SpatialNetwork net, const PhysarumParams& params, const FlowScheduler& scheduler,
           std::uint64_t seed, py::object observer) {
            if (observer.is_none()) {
                py::gil_scoped_release release;
                return run(std::move(net), params, scheduler, seed);
            }
            StepObserver wrapped = [observer](int step, double change, double active) {
                observer(step, change, active);
            };
            return run(std::move(net), params, scheduler, seed, wrapped);
        },
        py::arg("net"), py::arg("params"), py::arg("scheduler"), py::arg("seed"),
        py::arg("observer") = py::none());

    // ---- postprocessing ---------------------------------------------------
    m.def("prune", &prune, py::arg("net"), py::arg("eps") = kDefaultPruneEps);
    py::class_<ComponentFilterResult>(m, "ComponentFilterResult")
        .def_readonly("net", &ComponentFilterResult::net)
        .def_readonly("connected", &ComponentFilterResult::connected);
    m.def("keep_center_components", &keep_center_components, py::arg("net"));
    m.def("contract_degree2", &contract_degree2, py::arg("net"));
    py::class_<PostprocessResult>(m, "PostprocessResult")
        .def_readonly("net", &PostprocessResult::net)
        .def_readonly("connected", &PostprocessResult::connected);
    m.def("postprocess_pipeline", &postprocess_pipeline, py::arg("net"),
          py::arg("eps") = kDefaultPruneEps);

    // ---- generators -------------------------------------------------------
    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("centers", &Scenario::centers)
        .def_readwrite("seed", &Scenario::seed)
        .def("n", &Scenario::n)
        .def("validate", &Scenario::validate);
    m.def("sample_centers", &sample_centers, py::arg("n"), py::arg("seed"));
    m.def("complete_network", &complete_network, py::arg("scenario"));
    m.def("tree_network", &tree_network, py::arg("scenario"));

    py::class_<GridDims>(m, "GridDims")
        .def(py::init<>())
        .def(py::init([](int rows, int cols) {
                 return GridDims{rows, cols};
             }),
             py::arg("rows"), py::arg("cols"))
        .def_readwrite("rows", &GridDims::rows)
        .def_readwrite("cols", &GridDims::cols);
    py::class_<SlimeResult>(m, "SlimeResult")
        .def_readonly("net", &SlimeResult::net)
        .def_readonly("connected", &SlimeResult::connected)
        .def_readonly("iterations", &SlimeResult::iterations);
    m.def(
        "slime_network",
        [](const Scenario& scenario, const PhysarumParams& params, GridDims grid,
           double prune_eps) {
            py::gil_scoped_release release;
            return slime_network(scenario, params, grid, prune_eps);
        },
        py::arg("scenario"), py::arg("params") = PhysarumParams{}, py::arg("grid") = GridDims{},
        py::arg("prune_eps") = kDefaultPruneEps);

    py::class_<LhsPoint>(m, "LhsPoint")
        .def_readonly("n_centers", &LhsPoint::n_centers)
        .def_readonly("gamma", &LhsPoint::gamma);
    m.def("lhs_sample", &lhs_sample, py::arg("n_points"), py::arg("n_range"),
          py::arg("gamma_range"), py::arg("seed"));

    py::class_<DensityRaster>(m, "DensityRaster")
        .def_readonly("resolution", &DensityRaster::resolution)
        .def_readonly("r0", &DensityRaster::r0)
        .def_readonly("values", &DensityRaster::values)
        .def("at", &DensityRaster::at, py::arg("ix"), py::arg("iy"));
    m.def(
        "density_mixture",
        [](const std::vector<Point>& centers, int resolution, double r0) {
            return density_mixture(centers, resolution, r0);
        },
        py::arg("centers"), py::arg("resolution"), py::arg("r0"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));

    // ---- metrics ------------------------------------------------------------
    py::class_<IndicatorPair>(m, "IndicatorPair")
        .def(py::init<>())
        .def_readwrite("length_rel", &IndicatorPair::length_rel)
        .def_readwrite("perf_rel", &IndicatorPair::perf_rel)
        .def_readwrite("valid", &IndicatorPair::valid);
    m.def(
        "relative_length",
        [](const SpatialNetwork& net, const std::vector<Point>& centers) {
            return relative_length(net, centers);
        },
        py::arg("net"), py::arg("centers"));
    m.def(
        "relative_performance",
        [](const SpatialNetwork& net, const std::vector<Point>& centers) {
            return relative_performance(net, centers);
        },
        py::arg("net"), py::arg("centers"));
    m.def(
        "evaluate_indicators",
        [](const SpatialNetwork& net, const std::vector<Point>& centers) {
            return evaluate_indicators(net, centers);
        },
        py::arg("net"), py::arg("centers"));
    m.def(
        "pareto_front_indices",
        [](const std::vector<IndicatorPair>& points) { return pareto_front_indices(points); },
        py::arg("points"));

    // ---- experiment ------------------------------------------------------
    py::enum_<Generator>(m, "Generator")
        .value("Complete", Generator::Complete)
        .value("Slime", Generator::Slime)
        .value("Tree", Generator::Tree);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_lhs", &ExperimentConfig::n_lhs)
        .def_readwrite("n_reps", &ExperimentConfig::n_reps)
        .def_readwrite("n_range", &ExperimentConfig::n_range)
        .def_readwrite("gamma_range", &ExperimentConfig::gamma_range)
        .def_readwrite("grid", &ExperimentConfig::grid)
        .def_readwrite("params", &ExperimentConfig::params)
        .def_readwrite("root_seed", &ExperimentConfig::root_seed)
        .def_readwrite("out_path", &ExperimentConfig::out_path)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_readwrite("record_timing", &ExperimentConfig::record_timing)
        .def("validate", &ExperimentConfig::validate);

    py::class_<RunRecord>(m, "RunRecord")
        .def(py::init<>())
        .def_readwrite("lhs_index", &RunRecord::lhs_index)
        .def_readwrite("rep_index", &RunRecord::rep_index)
        .def_readwrite("seed", &RunRecord::seed)
        .def_readwrite("n_centers", &RunRecord::n_centers)
        .def_readwrite("gamma", &RunRecord::gamma)
        .def_readwrite("generator", &RunRecord::generator)
        .def_readwrite("length_rel", &RunRecord::length_rel)
        .def_readwrite("perf_rel", &RunRecord::perf_rel)
        .def_readwrite("valid", &RunRecord::valid)
        .def_readwrite("iterations", &RunRecord::iterations)
        .def_readwrite("wall_time_ms", &RunRecord::wall_time_ms);

    m.def(
        "run_experiment",
        [](const ExperimentConfig& config) {
            py::gil_scoped_release release;
            return run_experiment(config);
        },
        py::arg("config"));
    m.def(
        "write_records_csv",
        [](const std::vector<RunRecord>& records, const std::string& path) {
            write_records_csv(records, path);
        },
        py::arg("records"), py::arg("path"));
    m.def("read_records_csv", &read_records_csv, py::arg("path"));
    m.def(
        "extract_pareto",
        [](const std::vector<RunRecord>& records) { return extract_pareto(records); },
        py::arg("records"));

    // ---- rendering ----------------------------------------------------------
    m.def(
        "render_svg_string",
        [](const SpatialNetwork& net) { return render_svg_string(net); }, py::arg("net"));
    m.def(
        "render_pareto_svg_string",
        [](const std::vector<RunRecord>& records) { return render_pareto_svg_string(records); },
        py::arg("records"));

    // ---- reproducibility helpers ---------------------------------------
    m.def(
        "derive_seed",
        [](std::uint64_t root, const std::vector<std::uint64_t>& path) {
            return derive_seed(root, std::span<const std::uint64_t>(path));
        },
        py::arg("root"), py::arg("path"));
    m.attr("STREAM_CENTERS") = kStreamCenters;
    m.attr("STREAM_SCHEDULER") = kStreamScheduler;
    m.attr("STREAM_LHS") = kStreamLhs;
}
