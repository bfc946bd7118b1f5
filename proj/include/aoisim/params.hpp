#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace aoisim {

/// How the per-cycle failure count is drawn.
enum class FailureCountDist { Poisson, FixedCount };

/// How a nonnegative duration (off-time, idle) is drawn.
enum class TimeDist { Deterministic, Exponential };

enum class Architecture { MixedMemory, NvmOnly, VmOnly };

/// Device/environment parameter vector. All durations are clock ticks.
struct ScenarioParams {
    double mean_processing = 0.0;  // expected processing per cycle
    double mean_offtime = 0.0;     // expected dark time per failure
    double mean_failures = 0.0;    // expected failures per cycle
    double mean_idle = 0.0;        // expected idle between transmit and next sense
    double checkpoint_cost = 0.0;  // ticks per checkpoint
    double restore_cost = 0.0;     // ticks per restore
    FailureCountDist failure_count_dist = FailureCountDist::Poisson;
    TimeDist offtime_dist = TimeDist::Deterministic;
    TimeDist idle_dist = TimeDist::Deterministic;

    static ScenarioParams rf1();
    static ScenarioParams rf2();

    bool operator==(const ScenarioParams&) const = default;
};

/// Checkpoint every mean_processing/checkpoints_per_cycle processing ticks.
struct SingleFrequency {
    double checkpoints_per_cycle = 1.0;
    bool operator==(const SingleFrequency&) const = default;
};

/// Alternate between two fixed inter-checkpoint intervals.
struct SplitFrequency {
    double k_alpha = 1.0;
    double k_beta = 1.0;
    double h_alpha = 1.0;
    double h_beta = 1.0;
    bool operator==(const SplitFrequency&) const = default;
};

struct CheckpointPolicy {
    std::variant<SingleFrequency, SplitFrequency> kind;

    static CheckpointPolicy single(double h) { return {SingleFrequency{h}}; }
    static CheckpointPolicy split(double ka, double kb, double ha, double hb) {
        return {SplitFrequency{ka, kb, ha, hb}};
    }
    bool is_single() const { return std::holds_alternative<SingleFrequency>(kind); }
    const SingleFrequency& as_single() const { return std::get<SingleFrequency>(kind); }
    const SplitFrequency& as_split() const { return std::get<SplitFrequency>(kind); }

    bool operator==(const CheckpointPolicy&) const = default;
};

struct InvalidParameter {
    std::string name;
    std::string reason;
};

/// Carries every violated invariant, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<InvalidParameter> violations);
    const std::vector<InvalidParameter>& violations() const { return violations_; }

private:
    std::vector<InvalidParameter> violations_;
};

/// Collect all invariant violations; empty means valid.
std::vector<InvalidParameter> check(const ScenarioParams& params);
std::vector<InvalidParameter> check(const ScenarioParams& params,
                                    const CheckpointPolicy& policy);

/// Throws ValidationError listing every violation; no-op when valid.
void validate(const ScenarioParams& params, const CheckpointPolicy& policy);

std::string to_string(FailureCountDist d);
std::string to_string(TimeDist d);
std::string to_string(Architecture a);

}  // namespace aoisim
