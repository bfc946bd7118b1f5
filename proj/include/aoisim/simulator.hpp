#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "aoisim/params.hpp"

namespace aoisim {

namespace event {
struct Processing {
    int interval_index;
    std::int64_t ticks;
};
struct Checkpoint {
    std::int64_t ticks;
};
struct Failure {
    std::int64_t wasted_ticks;
    std::int64_t offtime_ticks;
    std::int64_t restore_ticks;
};
struct Transmit {};
}  // namespace event

using Segment = std::variant<event::Processing, event::Checkpoint, event::Failure,
                             event::Transmit>;

/// One renewal cycle: sense, process with failures, transmit.
struct CycleTrace {
    std::int64_t idle_ticks = 0;
    std::vector<Segment> segments;
    std::int64_t inter_completion = 0;  // Y
    std::int64_t completion = 0;        // S = Y - idle
    std::int64_t failures = 0;
};

struct RunConfig {
    std::int64_t n_cycles = 1;
    std::uint64_t seed = 0;
    ScenarioParams params;
    CheckpointPolicy policy = CheckpointPolicy::single(1.0);
    Architecture architecture = Architecture::MixedMemory;
    int jobs = 1;
};

struct RunTrace {
    std::vector<CycleTrace> cycles;
    std::int64_t total_ticks = 0;
};

/// Empirical freshness statistics for a run. Peak-age fields are absent
/// when the trace has fewer than two cycles.
struct AoiStats {
    double mean_y = 0.0;
    double mean_y_sq = 0.0;
    double mean_s = 0.0;
    double mean_idle = 0.0;
    std::optional<double> mean_peak_age;
    std::optional<double> std_err_peak;
    double time_avg_age = 0.0;
    double arrival_rate = 0.0;
    std::int64_t n_cycles = 0;
};

class EmptyTrace : public std::runtime_error {
public:
    EmptyTrace() : std::runtime_error("trace contains no cycles") {}
};

class InsufficientCycles : public std::runtime_error {
public:
    InsufficientCycles()
        : std::runtime_error("operation needs at least two cycles") {}
};

using Rng = std::mt19937_64;

/// Well-spaced sub-seed for independent runs derived from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Generate a single cycle under the given architecture.
CycleTrace simulate_cycle(const ScenarioParams& params, const CheckpointPolicy& policy,
                          Architecture architecture, Rng& rng);

/// Generate n_cycles independent cycles from a deterministic stream.
/// The result depends only on the config, not on the worker count.
RunTrace run(const RunConfig& config);

AoiStats empirical_stats(const RunTrace& trace);

/// Time-average age from the trapezoid areas of the sawtooth, cycles 2..n.
double integrate_sawtooth(const RunTrace& trace);

/// One row per cycle: `cycle,idle,failures,Y,S,peak` (peak blank for cycle 1).
void write_trace_csv(const RunTrace& trace, const std::string& path);

/// Realized integer-valued checkpoint schedule for a cycle.
/// Interval n runs interval_ticks[n] processing ticks then one checkpoint.
struct Schedule {
    std::vector<std::int64_t> interval_ticks;
    std::int64_t checkpoint_ticks = 0;
    std::int64_t processing_ticks = 0;  // sum of interval_ticks
};

Schedule realized_schedule(const ScenarioParams& params, const CheckpointPolicy& policy);

}  // namespace aoisim
