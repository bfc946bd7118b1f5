#pragma once

#include "aoisim/params.hpp"

namespace aoisim::analytic {

/// Shorthand constants used across the closed-form expressions.
/// c1 = E[R] + V + (D+1)/2, c2 = E[I] + E[P],
/// c3 = E[f]*c1 + c2,       c4 = E[f]*E[P].
struct DerivedConstants {
    double c1;
    double c2;
    double c3;
    double c4;
};

DerivedConstants derived_constants(const ScenarioParams& params);

/// Mean processing lost per failure when the active interval is k ticks
/// and a checkpoint costs d ticks: (k + d + 1)/2.
double expected_wasted_work(double k, double d);

/// Mean ticks between consecutive transmissions for the mixed-memory
/// device checkpointing h times per cycle.
double expected_inter_completion(const ScenarioParams& params, double h);

/// Mean ticks from sensing to transmission: E[Y] - E[I].
double expected_completion(const ScenarioParams& params, double h);

/// Average peak age of the mixed-memory device.
double paoi_mixed(const ScenarioParams& params, double h);

/// Checkpoint count per cycle that minimizes the average peak age:
/// sqrt(E[f] * E[P] / (2 D)).
double optimal_h_paoi(const ScenarioParams& params);

/// Derivative of paoi_mixed with respect to h: 2D - E[f]E[P]/h^2.
double paoi_mixed_derivative(const ScenarioParams& params, double h);

/// Variance of the inter-completion time under the configured
/// distributions (compound-sum closed forms).
double variance_inter_completion(const ScenarioParams& params,
                                 const CheckpointPolicy& policy);

/// Average age of the mixed-memory device, with the inter-completion
/// variance supplied explicitly.
double avg_aoi_mixed(const ScenarioParams& params, double h, double var_y);

/// Raised when a minimized objective has no interior optimum on the
/// search bracket.
class NoInteriorMinimum : public std::runtime_error {
public:
    NoInteriorMinimum() : std::runtime_error("objective is monotone on the bracket") {}
};

/// Checkpoint count minimizing the average age (numeric, bracketed
/// scalar minimization to 1e-6 absolute in h).
double optimal_h_aoi(const ScenarioParams& params);

/// Average peak age of an all-non-volatile device (no checkpointing).
double paoi_nvm(const ScenarioParams& params);

/// Average peak age of an all-volatile device (failure loses the whole
/// cycle's progress and forces a fresh idle draw).
double paoi_vm(const ScenarioParams& params);

/// paoi_mixed - paoi_nvm in closed form; nonnegative for valid inputs.
double paoi_gap_mm_nvm(const ScenarioParams& params, double h);

/// Mean wasted work per failure under split-frequency checkpointing.
double expected_wasted_work_split(double k_alpha, double k_beta, double d);

/// Average peak age under split-frequency checkpointing.
double paoi_sfc(const ScenarioParams& params, const SplitFrequency& policy);

}  // namespace aoisim::analytic
