#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "physnet/generators.hpp"
#include "physnet/metrics.hpp"
#include "physnet/physarum.hpp"

namespace physnet {

enum class Generator { Complete, Slime, Tree };

std::string to_string(Generator g);
Generator generator_from_string(const std::string& s);

struct ExperimentConfig {
    int n_lhs = 100;
    int n_reps = 100;
    std::pair<int, int> n_range{2, 6};
    std::pair<double, double> gamma_range{0.5, 2.5};
    GridDims grid{15, 15};
    PhysarumParams params;  // gamma is overridden by each LHS point
    std::uint64_t root_seed = 0;
    std::string out_path;  // empty: records are returned but not written
    int workers = 1;
    /// Off by default: per-run wall time would otherwise break the
    /// byte-reproducibility of the output across reruns and worker counts.
    bool record_timing = false;

    void validate() const;
};

/// One generated network's provenance and indicator values.
struct RunRecord {
    int lhs_index = 0;
    int rep_index = 0;
    std::uint64_t seed = 0;  // the center seed shared by the three generators
    int n_centers = 0;
    double gamma = 0.0;
    Generator generator = Generator::Complete;
    double length_rel = 0.0;
    double perf_rel = 0.0;
    bool valid = false;
    int iterations = 0;
    std::int64_t wall_time_ms = 0;
};

/// LHS points x replications x {complete, slime, tree}, sharing centers
/// within a replication. Individual failures are recorded as valid=false;
/// the batch never aborts. Output is sorted by (lhs_index, rep_index,
/// generator) and is byte-identical for a given config and seed regardless
/// of worker count.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

void write_records_csv(std::span<const RunRecord> records, const std::string& path);

/// ParseError (with line number) on malformed content.
std::vector<RunRecord> read_records_csv(const std::string& path);

/// Valid records that no other valid record dominates, in input order.
std::vector<RunRecord> extract_pareto(std::span<const RunRecord> records);

/// File-to-file variant; returns the number of front records written.
std::size_t extract_pareto_file(const std::string& runs_csv, const std::string& front_csv);

}  // namespace physnet
