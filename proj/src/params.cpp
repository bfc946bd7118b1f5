#include "aoisim/params.hpp"

#include <sstream>

namespace aoisim {

ScenarioParams ScenarioParams::rf1() {
    ScenarioParams p;
    p.mean_processing = 500;
    p.mean_offtime = 50;
    p.mean_failures = 15;
    p.mean_idle = 200;
    p.checkpoint_cost = 5;
    p.restore_cost = 10;
    return p;
}

ScenarioParams ScenarioParams::rf2() {
    ScenarioParams p = rf1();
    p.mean_offtime = 75;
    p.mean_failures = 6;
    return p;
}

namespace {

std::string join_message(const std::vector<InvalidParameter>& v) {
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& e : v) os << " [" << e.name << ": " << e.reason << "]";
    return os.str();
}

void require_finite(std::vector<InvalidParameter>& out, const char* name, double x) {
    if (!std::isfinite(x)) out.push_back({name, "must be finite"});
}

}  // namespace

ValidationError::ValidationError(std::vector<InvalidParameter> violations)
    : std::runtime_error(join_message(violations)), violations_(std::move(violations)) {}

std::vector<InvalidParameter> check(const ScenarioParams& p) {
    std::vector<InvalidParameter> out;
    require_finite(out, "mean_processing", p.mean_processing);
    require_finite(out, "mean_offtime", p.mean_offtime);
    require_finite(out, "mean_failures", p.mean_failures);
    require_finite(out, "mean_idle", p.mean_idle);
    require_finite(out, "checkpoint_cost", p.checkpoint_cost);
    require_finite(out, "restore_cost", p.restore_cost);
    if (!(p.mean_processing > 0))
        out.push_back({"mean_processing", "must be > 0"});
    if (!(p.checkpoint_cost > 0))
        out.push_back({"checkpoint_cost", "must be > 0"});
    if (p.mean_offtime < 0) out.push_back({"mean_offtime", "must be >= 0"});
    if (p.mean_failures < 0) out.push_back({"mean_failures", "must be >= 0"});
    if (p.mean_idle < 0) out.push_back({"mean_idle", "must be >= 0"});
    if (p.restore_cost < 0) out.push_back({"restore_cost", "must be >= 0"});
    return out;
}

std::vector<InvalidParameter> check(const ScenarioParams& p, const CheckpointPolicy& policy) {
    auto out = check(p);
    if (policy.is_single()) {
        const auto& sf = policy.as_single();
        if (!(sf.checkpoints_per_cycle > 0)) {
            out.push_back({"checkpoints_per_cycle", "must be > 0"});
        } else if (p.mean_processing > 0 &&
                   p.mean_processing / sf.checkpoints_per_cycle < 1.0) {
            out.push_back({"checkpoints_per_cycle",
                           "implied interval mean_processing/h is below one tick"});
        }
    } else {
        const auto& sp = policy.as_split();
        if (!(sp.k_alpha >= 1)) out.push_back({"k_alpha", "must be >= 1"});
        if (!(sp.k_beta >= 1)) out.push_back({"k_beta", "must be >= 1"});
        if (!(sp.h_alpha > 0)) out.push_back({"h_alpha", "must be > 0"});
        if (!(sp.h_beta > 0)) out.push_back({"h_beta", "must be > 0"});
        if (sp.k_alpha >= 1 && sp.k_beta >= 1 && sp.h_alpha > 0 && sp.h_beta > 0 &&
            p.mean_processing > 0) {
            const double budget = sp.h_alpha * sp.k_alpha + sp.h_beta * sp.k_beta;
            if (std::abs(budget - p.mean_processing) > 1e-9 * p.mean_processing) {
                out.push_back({"policy",
                               "h_alpha*k_alpha + h_beta*k_beta must equal mean_processing"});
            }
        }
    }
    return out;
}

void validate(const ScenarioParams& params, const CheckpointPolicy& policy) {
    auto v = check(params, policy);
    if (!v.empty()) throw ValidationError(std::move(v));
}

std::string to_string(FailureCountDist d) {
    return d == FailureCountDist::Poisson ? "poisson" : "fixed";
}

std::string to_string(TimeDist d) {
    return d == TimeDist::Deterministic ? "deterministic" : "exponential";
}

std::string to_string(Architecture a) {
    switch (a) {
        case Architecture::MixedMemory: return "mixed";
        case Architecture::NvmOnly: return "nvm";
        case Architecture::VmOnly: return "vm";
    }
    return "mixed";
}

}  // namespace aoisim
