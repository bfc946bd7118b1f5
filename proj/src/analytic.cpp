#include "aoisim/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace aoisim::analytic {

DerivedConstants derived_constants(const ScenarioParams& p) {
    DerivedConstants c;
    c.c1 = p.mean_offtime + p.restore_cost + (p.checkpoint_cost + 1.0) / 2.0;
    c.c2 = p.mean_idle + p.mean_processing;
    c.c3 = p.mean_failures * c.c1 + c.c2;
    c.c4 = p.mean_failures * p.mean_processing;
    return c;
}

double expected_wasted_work(double k, double d) {
    if (!(k >= 1)) throw std::domain_error("expected_wasted_work: k must be >= 1");
    if (!(d > 0)) throw std::domain_error("expected_wasted_work: d must be > 0");
    return (k + d + 1.0) / 2.0;
}

double expected_inter_completion(const ScenarioParams& p, double h) {
    if (!(h > 0)) throw std::domain_error("expected_inter_completion: h must be > 0");
    const auto c = derived_constants(p);
    return p.mean_failures * (c.c1 + p.mean_processing / (2.0 * h)) + c.c2 +
           p.checkpoint_cost * h;
}

double expected_completion(const ScenarioParams& p, double h) {
    return expected_inter_completion(p, h) - p.mean_idle;
}

double paoi_mixed(const ScenarioParams& p, double h) {
    if (!(h > 0)) throw std::domain_error("paoi_mixed: h must be > 0");
    const auto c = derived_constants(p);
    return 2.0 * p.mean_failures * (c.c1 + p.mean_processing / (2.0 * h)) + c.c2 +
           p.mean_processing + 2.0 * p.checkpoint_cost * h;
}

double optimal_h_paoi(const ScenarioParams& p) {
    if (!(p.mean_failures > 0))
        throw std::domain_error("optimal_h_paoi: mean_failures must be > 0");
    if (!(p.mean_processing > 0))
        throw std::domain_error("optimal_h_paoi: mean_processing must be > 0");
    if (!(p.checkpoint_cost > 0))
        throw std::domain_error("optimal_h_paoi: checkpoint_cost must be > 0");
    return std::sqrt(p.mean_failures * p.mean_processing / (2.0 * p.checkpoint_cost));
}

double paoi_mixed_derivative(const ScenarioParams& p, double h) {
    if (!(h > 0)) throw std::domain_error("paoi_mixed_derivative: h must be > 0");
    return 2.0 * p.checkpoint_cost -
           p.mean_failures * p.mean_processing / (h * h);
}

namespace {

struct WastedWorkMoments {
    double mean;
    double mean_sq;
};

// L is uniform on {1 .. m}; continuous-m forms so the analytic layer
// stays differentiable in h.
WastedWorkMoments uniform_wasted_moments(double m) {
    const double mean = (m + 1.0) / 2.0;
    const double var = (m * m - 1.0) / 12.0;
    return {mean, var + mean * mean};
}

double second_moment_offtime(const ScenarioParams& p) {
    const double r = p.mean_offtime;
    return p.offtime_dist == TimeDist::Exponential ? 2.0 * r * r : r * r;
}

}  // namespace

double variance_inter_completion(const ScenarioParams& p,
                                 const CheckpointPolicy& policy) {
    validate(p, policy);

    // Per-failure moments of X = L + R + V.
    WastedWorkMoments lw{};
    if (policy.is_single()) {
        const double k = p.mean_processing / policy.as_single().checkpoints_per_cycle;
        lw = uniform_wasted_moments(k + p.checkpoint_cost);
    } else {
        const auto& sp = policy.as_split();
        // Failure strikes an interval with probability proportional to its
        // share of the processing budget.
        const double wa = sp.h_alpha * sp.k_alpha;
        const double wb = sp.h_beta * sp.k_beta;
        const double pa = wa / (wa + wb);
        const auto la = uniform_wasted_moments(sp.k_alpha + p.checkpoint_cost);
        const auto lb = uniform_wasted_moments(sp.k_beta + p.checkpoint_cost);
        lw.mean = pa * la.mean + (1.0 - pa) * lb.mean;
        lw.mean_sq = pa * la.mean_sq + (1.0 - pa) * lb.mean_sq;
    }

    const double r = p.mean_offtime;
    const double v = p.restore_cost;
    const double mean_x = lw.mean + r + v;
    const double mean_x_sq = lw.mean_sq + second_moment_offtime(p) + v * v +
                             2.0 * (lw.mean * r + lw.mean * v + r * v);

    double var = 0.0;
    if (p.failure_count_dist == FailureCountDist::Poisson) {
        var = p.mean_failures * mean_x_sq;
    } else {
        const double n = std::round(p.mean_failures);
        var = n * (mean_x_sq - mean_x * mean_x);
    }
    if (p.idle_dist == TimeDist::Exponential) var += p.mean_idle * p.mean_idle;
    return var;
}

double avg_aoi_mixed(const ScenarioParams& p, double h, double var_y) {
    if (!(h > 0)) throw std::domain_error("avg_aoi_mixed: h must be > 0");
    if (!(var_y >= 0)) throw std::domain_error("avg_aoi_mixed: var_y must be >= 0");
    const auto c = derived_constants(p);
    const double d = p.checkpoint_cost;
    return var_y / (2.0 * c.c3 + c.c4 / h + 2.0 * d * h) +
           1.5 * (c.c3 + c.c4 / (2.0 * h) + d * h) - p.mean_idle;
}

double optimal_h_aoi(const ScenarioParams& p) {
    if (!(p.checkpoint_cost > 0))
        throw std::domain_error("optimal_h_aoi: checkpoint_cost must be > 0");
    if (!(p.mean_failures > 0)) throw NoInteriorMinimum();

    const auto objective = [&](double h) {
        return avg_aoi_mixed(
            p, h, variance_inter_completion(p, CheckpointPolicy::single(h)));
    };

    const double lo = 1e-6;
    const double hi = p.mean_processing;
    // Coarse scan to bracket the minimum, then golden-section refine.
    const int n = 512;
    int best = 0;
    double best_val = objective(lo);
    for (int i = 1; i <= n; ++i) {
        const double h = lo + (hi - lo) * i / n;
        const double v = objective(h);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == 0 || best == n) throw NoInteriorMinimum();

    double a = lo + (hi - lo) * (best - 1) / n;
    double b = lo + (hi - lo) * (best + 1) / n;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > 1e-7) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
    }
    return (a + b) / 2.0;
}

double paoi_nvm(const ScenarioParams& p) {
    return p.mean_idle + 2.0 * p.mean_failures * p.mean_offtime +
           2.0 * p.mean_processing;
}

double paoi_vm(const ScenarioParams& p) {
    return 2.0 * p.mean_failures *
               (p.mean_offtime + (p.mean_processing + 1.0) / 2.0 + p.mean_idle) +
           p.mean_idle + 2.0 * p.mean_processing;
}

double paoi_gap_mm_nvm(const ScenarioParams& p, double h) {
    if (!(h > 0)) throw std::domain_error("paoi_gap_mm_nvm: h must be > 0");
    return 2.0 * p.checkpoint_cost * h +
           p.mean_failures * (2.0 * p.restore_cost + p.checkpoint_cost + 1.0 +
                              p.mean_processing / h);
}

double expected_wasted_work_split(double k_alpha, double k_beta, double d) {
    if (!(k_alpha >= 1))
        throw std::domain_error("expected_wasted_work_split: k_alpha must be >= 1");
    if (!(k_beta >= 1))
        throw std::domain_error("expected_wasted_work_split: k_beta must be >= 1");
    if (!(d > 0)) throw std::domain_error("expected_wasted_work_split: d must be > 0");
    return (k_alpha * k_alpha + k_beta * k_beta) / (2.0 * (k_alpha + k_beta)) +
           (d + 1.0) / 2.0;
}

double paoi_sfc(const ScenarioParams& p, const SplitFrequency& sp) {
    validate(p, CheckpointPolicy{sp});
    const auto c = derived_constants(p);
    const double d = p.checkpoint_cost;
    // c1 already carries the (D+1)/2 share of the wasted work, so only the
    // interval-dependent part of E[L] is added here.
    const double interval_part = expected_wasted_work_split(sp.k_alpha, sp.k_beta, d) -
                                 (d + 1.0) / 2.0;
    return c.c2 + 2.0 * d * (sp.h_alpha + sp.h_beta) + p.mean_processing +
           2.0 * p.mean_failures * (c.c1 + interval_part);
}

}  // namespace aoisim::analytic
