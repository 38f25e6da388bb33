#include "physnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "csv_util.hpp"
#include "physnet/errors.hpp"
#include "physnet/network_io.hpp"
#include "physnet/rng.hpp"

namespace physnet {

namespace {

constexpr const char* kRecordsHeader =
    "lhs_index,rep_index,seed,N,gamma,generator,length_rel,perf_rel,valid,iterations,"
    "wall_time_ms";

std::mutex warn_mutex;

void warn(const std::string& message) {
    std::lock_guard<std::mutex> lock(warn_mutex);
    std::cerr << message << '\n';
}

}  // namespace

std::string to_string(Generator g) {
    switch (g) {
        case Generator::Complete:
            return "complete";
        case Generator::Slime:
            return "slime";
        case Generator::Tree:
            return "tree";
    }
    throw ConfigError("unknown generator value");
}

Generator generator_from_string(const std::string& s) {
    if (s == "complete") return Generator::Complete;
    if (s == "slime") return Generator::Slime;
    if (s == "tree") return Generator::Tree;
    throw ConfigError("unknown generator '" + s + "'");
}

void ExperimentConfig::validate() const {
    if (n_lhs < 1) throw ConfigError("number of design points must be >= 1");
    if (n_reps < 1) throw ConfigError("number of replications must be >= 1");
    if (n_range.first < 2)
        throw ConfigError("minimum number of centers must be >= 2, got " +
                          std::to_string(n_range.first));
    if (n_range.second < n_range.first) throw ConfigError("center range is empty");
    if (!(gamma_range.first > 0.0))
        throw ConfigError("gamma lower bound must be positive");
    if (!(gamma_range.second >= gamma_range.first)) throw ConfigError("gamma range is empty");
    if (grid.rows < 2 || grid.cols < 2) throw ConfigError("grid must be at least 2x2");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    params.validate();
}

namespace {

/// The three records of one (design point, replication) task, in the order
/// they appear in the output file.
struct TaskRecords {
    RunRecord rec[3];
};

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

void run_one_task(const ExperimentConfig& config, const LhsPoint& point, int li, int ri,
                  TaskRecords& out) {
    const std::uint64_t seed =
        derive_seed(config.root_seed, {kStreamCenters, static_cast<std::uint64_t>(li),
                                       static_cast<std::uint64_t>(ri)});
    const Scenario scenario = sample_centers(point.n_centers, seed);
    PhysarumParams params = config.params;
    params.gamma = point.gamma;

    const Generator order[3] = {Generator::Complete, Generator::Slime, Generator::Tree};
    for (int gi = 0; gi < 3; ++gi) {
        RunRecord& r = out.rec[gi];
        r.lhs_index = li;
        r.rep_index = ri;
        r.seed = seed;
        r.n_centers = point.n_centers;
        r.gamma = point.gamma;
        r.generator = order[gi];

        const auto t0 = std::chrono::steady_clock::now();
        try {
            IndicatorPair ind;
            switch (r.generator) {
                case Generator::Complete:
                    ind = evaluate_indicators(complete_network(scenario), scenario.centers);
                    break;
                case Generator::Tree:
                    ind = evaluate_indicators(tree_network(scenario), scenario.centers);
                    break;
                case Generator::Slime: {
                    const SlimeResult res = slime_network(scenario, params, config.grid);
                    r.iterations = res.iterations;
                    ind = evaluate_indicators(res.net, scenario.centers);
                    break;
                }
            }
            r.length_rel = ind.length_rel;
            r.perf_rel = ind.perf_rel;
            r.valid = ind.valid;
        } catch (const std::exception& e) {
            r.length_rel = std::numeric_limits<double>::quiet_NaN();
            r.perf_rel = std::numeric_limits<double>::quiet_NaN();
            r.valid = false;
            warn("experiment: point " + std::to_string(li) + " rep " + std::to_string(ri) +
                 " " + to_string(r.generator) + " run failed: " + e.what());
        }
        if (config.record_timing) r.wall_time_ms = elapsed_ms(t0);
    }
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::vector<LhsPoint> design = lhs_sample(
        config.n_lhs, config.n_range, config.gamma_range, derive_seed(config.root_seed, {kStreamLhs}));

    const std::size_t n_tasks =
        static_cast<std::size_t>(config.n_lhs) * static_cast<std::size_t>(config.n_reps);
    std::vector<TaskRecords> slots(n_tasks);

    // Tasks are claimed from a shared counter and written to preassigned
    // slots, so the flattened output does not depend on scheduling.
    std::atomic<std::size_t> next_task{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= n_tasks) return;
            const int li = static_cast<int>(t / static_cast<std::size_t>(config.n_reps));
            const int ri = static_cast<int>(t % static_cast<std::size_t>(config.n_reps));
            run_one_task(config, design[static_cast<std::size_t>(li)], li, ri, slots[t]);
        }
    };

    const int n_workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.workers), n_tasks));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<RunRecord> records;
    records.reserve(n_tasks * 3);
    for (const TaskRecords& slot : slots)
        for (const RunRecord& r : slot.rec) records.push_back(r);

    if (!config.out_path.empty()) write_records_csv(records, config.out_path);
    return records;
}

void write_records_csv(std::span<const RunRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write records file " + path);
    out << kRecordsHeader << '\n';
    for (const RunRecord& r : records) {
        out << r.lhs_index << ',' << r.rep_index << ',' << r.seed << ',' << r.n_centers << ','
            << format_double(r.gamma) << ',' << to_string(r.generator) << ','
            << format_double(r.length_rel) << ',' << format_double(r.perf_rel) << ','
            << (r.valid ? "true" : "false") << ',' << r.iterations << ',' << r.wall_time_ms
            << '\n';
    }
    if (!out.flush()) throw IoError("failed writing records file " + path);
}

std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open records file " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
    long lineno = 1;
    if (csv::split_line(line) != csv::split_line(kRecordsHeader))
        throw ParseError(path, 1, std::string("expected header ") + kRecordsHeader);

    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split_line(line);
        if (f.size() != 11) throw ParseError(path, lineno, "expected 11 fields");
        RunRecord r;
        r.lhs_index = csv::parse_int(f[0], path, lineno, "lhs_index");
        r.rep_index = csv::parse_int(f[1], path, lineno, "rep_index");
        r.seed = csv::parse_uint64(f[2], path, lineno, "seed");
        r.n_centers = csv::parse_int(f[3], path, lineno, "N");
        r.gamma = csv::parse_double(f[4], path, lineno, "gamma");
        try {
            r.generator = generator_from_string(f[5]);
        } catch (const ConfigError& e) {
            throw ParseError(path, lineno, e.what());
        }
        r.length_rel = csv::parse_double(f[6], path, lineno, "length_rel", /*allow_nan=*/true);
        r.perf_rel = csv::parse_double(f[7], path, lineno, "perf_rel", /*allow_nan=*/true);
        if (f[8] == "true") {
            r.valid = true;
        } else if (f[8] == "false") {
            r.valid = false;
        } else {
            throw ParseError(path, lineno, "invalid valid flag '" + f[8] + "'");
        }
        r.iterations = csv::parse_int(f[9], path, lineno, "iterations");
        r.wall_time_ms = csv::parse_integer(f[10], path, lineno, "wall_time_ms");
        records.push_back(r);
    }
    return records;
}

std::vector<RunRecord> extract_pareto(std::span<const RunRecord> records) {
    std::vector<std::size_t> valid_ix;
    std::vector<IndicatorPair> points;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].valid) continue;
        valid_ix.push_back(i);
        points.push_back(IndicatorPair{records[i].length_rel, records[i].perf_rel, true});
    }
    if (points.empty()) {
        warn("pareto: no valid records, front is empty");
        return {};
    }
    std::vector<RunRecord> front;
    for (const std::size_t k : pareto_front_indices(points))
        front.push_back(records[valid_ix[k]]);
    return front;
}

std::size_t extract_pareto_file(const std::string& runs_csv, const std::string& front_csv) {
    const std::vector<RunRecord> records = read_records_csv(runs_csv);
    const std::vector<RunRecord> front = extract_pareto(records);
    write_records_csv(front, front_csv);
    return front.size();
}

}  // namespace physnet
