#include "physnet/physarum.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <string>

namespace physnet {

void PhysarumParams::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
    if (!(dt > 0.0 && dt <= 1.0)) throw ConfigError("dt must be in (0, 1]");
    if (!(i0 > 0.0)) throw ConfigError("i0 must be > 0");
    if (!(z_default > 0.0)) throw ConfigError("z_default must be > 0");
    if (!(d0 > 0.0)) throw ConfigError("d0 must be > 0");
    if (t_f < 0) throw ConfigError("t_f must be >= 0");
    if (eps_conv < 0.0) throw ConfigError("eps_conv must be >= 0");
}

FlowScenario FlowScenario::source_sink(int source, int sink, double i0) {
    if (source == sink) throw ConfigError("source and sink must differ");
    FlowScenario s;
    s.set_current(source, i0);
    s.set_current(sink, -i0);
    return s;
}

void FlowScenario::set_current(int node_id, double current) {
    if (!std::isfinite(current)) throw ConfigError("non-finite current");
    currents_[node_id] = current;
}

double FlowScenario::current(int node_id) const {
    const auto it = currents_.find(node_id);
    return it == currents_.end() ? 0.0 : it->second;
}

double FlowScenario::scale() const {
    double s = 0.0;
    for (const auto& [id, c] : currents_) s = std::max(s, std::abs(c));
    return s;
}

void FlowScenario::validate() const {
    double sum = 0.0;
    for (const auto& [id, c] : currents_) sum += c;
    const double tol = 1e-12 * scale();
    if (std::abs(sum) > tol)
        throw ConfigError("scenario currents sum to " + std::to_string(sum) +
                          ", expected 0 within " + std::to_string(tol));
}

double PressureField::at(int node_id) const {
    const auto it = pressure.find(node_id);
    if (it == pressure.end())
        throw ConfigError("pressure field has no node " + std::to_string(node_id));
    return it->second;
}

FlowScheduler FlowScheduler::multi_center() { return FlowScheduler(SchedulerKind::MultiCenter); }

FlowScheduler FlowScheduler::random_pair() { return FlowScheduler(SchedulerKind::RandomPair); }

FlowScheduler FlowScheduler::fixed(FlowScenario scenario) {
    scenario.validate();
    FlowScheduler s(SchedulerKind::Fixed);
    s.fixed_ = std::move(scenario);
    return s;
}

FlowScenario FlowScheduler::draw(const std::vector<int>& center_ids, double i0,
                                 Rng& rng) const {
    if (kind_ == SchedulerKind::Fixed) return fixed_;
    const std::size_t n = center_ids.size();
    if (n < 2)
        throw ConfigError("random flow schedulers need at least 2 centers, have " +
                          std::to_string(n));
    FlowScenario s;
    if (kind_ == SchedulerKind::MultiCenter) {
        const std::size_t source = rng.below(n);
        // The source current is the exact negation of the floating-point sum
        // of the sink shares, so the scenario balances bit-exactly.
        const double sink_share = -i0 / static_cast<double>(n - 1);
        double source_current = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == source) continue;
            s.set_current(center_ids[i], sink_share);
            source_current -= sink_share;
        }
        s.set_current(center_ids[source], source_current);
    } else {
        const std::size_t source = rng.below(n);
        std::size_t sink = rng.below(n - 1);
        if (sink >= source) ++sink;
        s.set_current(center_ids[source], i0);
        s.set_current(center_ids[sink], -i0);
    }
    return s;
}

double conductance(const Edge& edge) {
    if (edge.diameter == 0.0) return 0.0;
    return edge.diameter / (edge.impedance * edge.length);
}

namespace {

// Dense index maps shared by one solve.
struct SolveIndex {
    std::vector<int> ids;                 // dense index -> node id (ascending)
    std::map<int, std::size_t> id_to_ix;  // node id -> dense index
};

SolveIndex make_index(const SpatialNetwork& net) {
    SolveIndex ix;
    ix.ids.reserve(net.node_count());
    for (const auto& n : net.nodes()) ix.ids.push_back(n.id);
    std::sort(ix.ids.begin(), ix.ids.end());
    for (std::size_t i = 0; i < ix.ids.size(); ++i) ix.id_to_ix.emplace(ix.ids[i], i);
    return ix;
}

}  // namespace

PressureField solve_pressures(const SpatialNetwork& net, const FlowScenario& scenario) {
    scenario.validate();
    if (net.node_count() == 0) throw ConfigError("cannot solve pressures on an empty network");
    for (const auto& [id, c] : scenario.currents())
        if (!net.has_node(id))
            throw ConfigError("scenario references unknown node " + std::to_string(id));

    const SolveIndex ix = make_index(net);
    const std::size_t n = ix.ids.size();

    std::vector<double> injected(n, 0.0);
    for (const auto& [id, c] : scenario.currents()) injected[ix.id_to_ix.at(id)] = c;

    // Gauge: most negative current, ties by lowest id. Ids are ascending, so
    // a strict < keeps the lowest id.
    std::size_t gauge = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (injected[i] < injected[gauge]) gauge = i;

    // Positive-conductance adjacency.
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const auto& e : net.edges()) {
        const double g = conductance(e);
        if (g <= 0.0) continue;
        const std::size_t a = ix.id_to_ix.at(e.src);
        const std::size_t b = ix.id_to_ix.at(e.dst);
        adj[a].emplace_back(b, g);
        adj[b].emplace_back(a, g);
    }

    // The component reachable from the gauge node must hold every node that
    // carries current; anything else makes the system singular.
    std::vector<std::int32_t> comp_ix(n, -1);
    std::vector<std::size_t> comp_nodes;
    {
        std::deque<std::size_t> queue{gauge};
        comp_ix[gauge] = 0;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            comp_ix[u] = static_cast<std::int32_t>(comp_nodes.size());
            comp_nodes.push_back(u);
            for (const auto& [v, g] : adj[u]) {
                if (comp_ix[v] == -1) {
                    comp_ix[v] = -2;  // queued
                    queue.push_back(v);
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (injected[i] != 0.0 && comp_ix[i] < 0) {
            std::ostringstream msg;
            msg << "singular pressure system: node " << ix.ids[i] << " (current "
                << injected[i] << ") is not connected to the gauge sink " << ix.ids[gauge]
                << " through conducting edges";
            throw SingularSystemError(msg.str());
        }
    }

    // Reduced Laplacian over the gauge component, gauge row and column
    // removed; the remainder is symmetric positive definite.
    const std::size_t m = comp_nodes.size();
    std::vector<std::int64_t> reduced(n, -1);
    {
        std::int64_t next = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t u = comp_nodes[k];
            if (u != gauge) reduced[u] = next++;
        }
    }

    const double scale = std::max(scenario.scale(), 1.0);
    PressureField field;
    field.gauge_id = ix.ids[gauge];
    for (std::size_t i = 0; i < n; ++i) field.pressure[ix.ids[i]] = 0.0;
    if (m <= 1) return field;

    using Sparse = Eigen::SparseMatrix<double>;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(4 * net.edge_count() + m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m - 1));
    std::vector<double> diag(n, 0.0);
    for (const auto& e : net.edges()) {
        const double g = conductance(e);
        if (g <= 0.0) continue;
        const std::size_t a = ix.id_to_ix.at(e.src);
        const std::size_t b = ix.id_to_ix.at(e.dst);
        if (comp_ix[a] < 0) continue;  // both endpoints outside the gauge component
        diag[a] += g;
        diag[b] += g;
        if (reduced[a] >= 0 && reduced[b] >= 0) {
            triplets.emplace_back(static_cast<int>(reduced[a]), static_cast<int>(reduced[b]),
                                  -g);
            triplets.emplace_back(static_cast<int>(reduced[b]), static_cast<int>(reduced[a]),
                                  -g);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (reduced[i] < 0) continue;
        triplets.emplace_back(static_cast<int>(reduced[i]), static_cast<int>(reduced[i]),
                              diag[i]);
        rhs[reduced[i]] = injected[i];
    }

    Sparse laplacian(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(m - 1));
    laplacian.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SimplicialLDLT<Sparse> solver;
    solver.compute(laplacian);
    if (solver.info() != Eigen::Success)
        throw SingularSystemError("pressure system factorization failed");
    const Eigen::VectorXd p = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
        throw SingularSystemError("pressure system solve failed");

    // Enforce the conservation contract before handing the field out.
    const Eigen::VectorXd residual = laplacian * p - rhs;
    if (residual.cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw SingularSystemError("pressure solve residual exceeds 1e-9 * I0 (ill-conditioned system)");

    for (std::size_t i = 0; i < n; ++i)
        if (reduced[i] >= 0) field.pressure[ix.ids[i]] = p[reduced[i]];
    return field;
}

void compute_flows(SpatialNetwork& net, const PressureField& pressures) {
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Edge& edge = net.edge(e);
        const double g = conductance(edge);
        const double phi =
            g == 0.0 ? 0.0 : g * (pressures.at(edge.src) - pressures.at(edge.dst));
        net.set_flow(e, phi);
    }
}

double update_diameters(SpatialNetwork& net, const PhysarumParams& params) {
    double total_change = 0.0;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Edge& edge = net.edge(e);
        const double f = std::abs(edge.flow);
        const double fg = std::pow(f, params.gamma);
        const double growth = std::isinf(fg) ? 1.0 : fg / (1.0 + fg);
        double d = edge.diameter + params.dt * (growth - edge.diameter);
        if (d < kDiameterFloor) d = 0.0;
        total_change += std::abs(d - edge.diameter);
        net.set_diameter(e, d);
    }
    return total_change;
}

PhysarumResult run(SpatialNetwork net, const PhysarumParams& params,
                   const FlowScheduler& scheduler, std::uint64_t seed,
                   const StepObserver& observer) {
    params.validate();
    const std::vector<int> centers = net.center_ids();
    Rng rng(seed);

    PhysarumResult result{std::move(net), 0};
    for (int step = 0; step < params.t_f; ++step) {
        const FlowScenario scenario = scheduler.draw(centers, params.i0, rng);
        PressureField pressures;
        try {
            pressures = solve_pressures(result.net, scenario);
        } catch (const SingularSystemError& e) {
            throw SingularSystemError("step " + std::to_string(step) + ": " + e.what());
        }
        compute_flows(result.net, pressures);
        const double change = update_diameters(result.net, params);
        ++result.iterations;
        if (observer) {
            double active = 0.0;
            for (const auto& e : result.net.edges())
                if (e.diameter >= kActiveDiameter) active += e.length;
            observer(step, change, active);
        }
        if (params.eps_conv > 0.0 && change < params.eps_conv) break;
    }
    return result;
}

}  // namespace physnet
