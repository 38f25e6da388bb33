#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "physnet/rng.hpp"
#include "physnet/spatial_network.hpp"

namespace physnet {

/// Edges whose diameter falls below this are frozen at exactly 0: they stop
/// conducting but stay in the (fixed) topology.
inline constexpr double kDiameterFloor = 1e-12;

/// Threshold used when reporting the "active" network length in per-step
/// trajectories; matches the default pruning threshold.
inline constexpr double kActiveDiameter = 0.05;

struct PhysarumParams {
    double gamma = 1.8;      // reinforcement exponent
    double dt = 0.05;        // Euler step
    double i0 = 1.0;         // injected current
    double z_default = 1.0;  // impedance applied where none is specified
    double d0 = 0.5;         // initial diameter
    int t_f = 1000;          // iteration budget
    double eps_conv = 0.0;   // sum|dD| stopping threshold; 0 = fixed-step mode

    void validate() const;  // throws ConfigError
};

/// Injected current per node id; positive = source, negative = sink.
/// Currents must balance globally.
class FlowScenario {
public:
    FlowScenario() = default;
    static FlowScenario source_sink(int source, int sink, double i0);

    void set_current(int node_id, double current);
    double current(int node_id) const;
    const std::map<int, double>& currents() const { return currents_; }

    /// Largest |current|; the natural I0 scale of the scenario.
    double scale() const;

    /// Throws ConfigError unless currents sum to 0 within 1e-12 * scale.
    void validate() const;

private:
    std::map<int, double> currents_;
};

/// Node pressures from one conservation solve; the gauge node is pinned to 0.
struct PressureField {
    std::map<int, double> pressure;
    int gauge_id = -1;

    double at(int node_id) const;
};

enum class SchedulerKind { MultiCenter, RandomPair, Fixed };

/// Per-step source/sink assignment policy.
///  - MultiCenter: one uniformly random center sources I0, every other
///    center sinks I0/(N-1).
///  - RandomPair: a uniformly random ordered pair of distinct centers
///    exchanges +I0/-I0.
///  - Fixed: a constant scenario.
class FlowScheduler {
public:
    static FlowScheduler multi_center();
    static FlowScheduler random_pair();
    static FlowScheduler fixed(FlowScenario scenario);

    SchedulerKind kind() const { return kind_; }

    /// Draws the next scenario. `center_ids` must be ascending; random kinds
    /// require at least two centers.
    FlowScenario draw(const std::vector<int>& center_ids, double i0, Rng& rng) const;

private:
    explicit FlowScheduler(SchedulerKind kind) : kind_(kind) {}
    SchedulerKind kind_;
    FlowScenario fixed_;
};

/// Ohm-analog coefficient D / (Z * L); exactly 0 for a dead (D = 0) edge.
double conductance(const Edge& edge);

/// Solves Kirchhoff conservation for node pressures. The sink with the most
/// negative current (ties by lowest id) is gauged to 0. Throws
/// SingularSystemError when current-carrying nodes are not mutually connected
/// through conducting edges.
PressureField solve_pressures(const SpatialNetwork& net, const FlowScenario& scenario);

/// Stores phi = conductance * (p_src - p_dst) on every edge.
void compute_flows(SpatialNetwork& net, const PressureField& pressures);

/// One Euler step of D += dt * (|phi|^gamma / (1 + |phi|^gamma) - D) on every
/// edge; returns the total absolute diameter change.
double update_diameters(SpatialNetwork& net, const PhysarumParams& params);

struct PhysarumResult {
    SpatialNetwork net;
    int iterations = 0;
};

using StepObserver =
    std::function<void(int step, double sum_abs_delta_d, double active_length)>;

/// Iterates draw -> solve -> flows -> update until t_f steps have run or,
/// with eps_conv > 0, until sum|dD| drops below it. Deterministic in
/// (net, params, seed). Diameters must already be initialized.
PhysarumResult run(SpatialNetwork net, const PhysarumParams& params,
                   const FlowScheduler& scheduler, std::uint64_t seed,
                   const StepObserver& observer = {});

}  // namespace physnet
