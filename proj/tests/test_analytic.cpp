#include <doctest.h>

#include <cmath>
#include <random>

#include "aoisim/analytic.hpp"

using namespace aoisim;
namespace an = aoisim::analytic;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Fuzzed but always-valid parameter sets.
ScenarioParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScenarioParams p;
    p.mean_processing = 10.0 + 1990.0 * u(rng);
    p.mean_offtime = 500.0 * u(rng);
    p.mean_failures = 0.1 + 99.9 * u(rng);
    p.mean_idle = 1000.0 * u(rng);
    p.checkpoint_cost = 0.5 + 49.5 * u(rng);
    p.restore_cost = 100.0 * u(rng);
    return p;
}

double random_h(const ScenarioParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(1.0, p.mean_processing);
    return u(rng);
}

}  // namespace

TEST_CASE("derived constants for the preset scenarios") {
    const auto c1 = an::derived_constants(ScenarioParams::rf1());
    CHECK(c1.c1 == 63.0);
    CHECK(c1.c2 == 700.0);
    CHECK(c1.c3 == 15.0 * 63.0 + 700.0);
    CHECK(c1.c4 == 7500.0);
    const auto c2 = an::derived_constants(ScenarioParams::rf2());
    CHECK(c2.c1 == 88.0);
    CHECK(c2.c4 == 3000.0);
}

TEST_CASE("expected wasted work matches exhaustive enumeration") {
    // Oracle: mean of the uniform support {1 .. k+d} enumerated directly.
    const auto enumerate_mean = [](int m) {
        double sum = 0;
        for (int l = 1; l <= m; ++l) sum += l;
        return sum / m;
    };
    CHECK(an::expected_wasted_work(50, 5) == doctest::Approx(enumerate_mean(55)));
    CHECK(an::expected_wasted_work(50, 5) == 28.0);
    CHECK(an::expected_wasted_work(1, 1) == doctest::Approx(enumerate_mean(2)));
    CHECK(an::expected_wasted_work(1, 1) == 1.5);
    CHECK(an::expected_wasted_work(500.0 / 10.0, 5) == 28.0);
    CHECK_THROWS_AS(an::expected_wasted_work(0.5, 5), std::domain_error);
    CHECK_THROWS_AS(an::expected_wasted_work(50, 0), std::domain_error);
}

TEST_CASE("expected inter-completion and completion times") {
    const auto rf1 = ScenarioParams::rf1();
    const auto rf2 = ScenarioParams::rf2();
    CHECK(an::expected_inter_completion(rf1, 10) == 2070.0);
    CHECK(an::expected_inter_completion(rf2, 10) == 1428.0);
    CHECK(an::expected_completion(rf1, 10) == 1870.0);

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::expected_inter_completion(nofail, 7) ==
          nofail.mean_idle + nofail.mean_processing + 5.0 * 7);
    CHECK_THROWS_AS(an::expected_inter_completion(rf1, 0), std::domain_error);
}

TEST_CASE("mixed-memory peak age at the preset scenarios") {
    CHECK(an::paoi_mixed(ScenarioParams::rf1(), 10) == 3940.0);
    CHECK(an::paoi_mixed(ScenarioParams::rf2(), 10) == 2656.0);

    ScenarioParams nofail = ScenarioParams::rf1();
    nofail.mean_failures = 0;
    // Without failures checkpointing is pure overhead: monotone in h.
    double prev = an::paoi_mixed(nofail, 1);
    for (double h = 2; h <= 50; ++h) {
        const double cur = an::paoi_mixed(nofail, h);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("peak age identity: paoi = E[Y] + E[S] on fuzzed inputs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        const double h = random_h(p, rng);
        const double lhs = an::paoi_mixed(p, h);
        const double rhs =
            an::expected_inter_completion(p, h) + an::expected_completion(p, h);
        CHECK(rel_err(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("optimal checkpoint count for peak age") {
    const auto rf1 = ScenarioParams::rf1();
    const auto rf2 = ScenarioParams::rf2();
    CHECK(an::optimal_h_paoi(rf1) == doctest::Approx(std::sqrt(750.0)).epsilon(1e-12));
    CHECK(an::optimal_h_paoi(rf2) == doctest::Approx(std::sqrt(300.0)).epsilon(1e-12));

    // Derivative vanishes at the returned point.
    CHECK(std::abs(an::paoi_mixed_derivative(rf1, an::optimal_h_paoi(rf1))) < 1e-9);

    // Oracle: grid search.
    const double h_star = an::optimal_h_paoi(rf1);
    const double best = an::paoi_mixed(rf1, h_star);
    for (double h = 1e-3; h <= 200.0; h += 1e-3)
        CHECK(an::paoi_mixed(rf1, h) >= best - 1e-12);

    ScenarioParams unit = rf1;
    unit.mean_failures = 2.0 * unit.checkpoint_cost / unit.mean_processing;
    CHECK(an::optimal_h_paoi(unit) == doctest::Approx(1.0));

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK_THROWS_AS(an::optimal_h_paoi(nofail), std::domain_error);
}

TEST_CASE("optimality of h* on fuzzed inputs") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params(rng);
        const double h_star = an::optimal_h_paoi(p);
        const double best = an::paoi_mixed(p, h_star);
        for (int g = 1; g <= 400; ++g) {
            const double h = h_star / 100.0 * g;
            CHECK(an::paoi_mixed(p, h) >= best * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("under-checkpointing is penalized more than over-checkpointing") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        const double h_star = an::optimal_h_paoi(p);
        if (h_star <= 1.0) continue;
        const double delta = u(rng) * (h_star - 1.0);
        if (delta <= 0.0) continue;
        CHECK(an::paoi_mixed(p, h_star - delta) > an::paoi_mixed(p, h_star + delta));
    }
}

TEST_CASE("derivative matches a central difference") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params(rng);
        const double h = random_h(p, rng);
        const double eps = 1e-4 * h;
        const double numeric =
            (an::paoi_mixed(p, h + eps) - an::paoi_mixed(p, h - eps)) / (2.0 * eps);
        const double exact = an::paoi_mixed_derivative(p, h);
        if (std::abs(exact) > 1e-6) CHECK(rel_err(numeric, exact) < 1e-6);
    }
}

TEST_CASE("inter-completion variance under the default distributions") {
    const auto rf1 = ScenarioParams::rf1();
    CHECK(an::variance_inter_completion(rf1, CheckpointPolicy::single(10)) == 119940.0);

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::variance_inter_completion(nofail, CheckpointPolicy::single(10)) == 0.0);

    // Degenerate unit atom: K = 1 and checkpoint cost approaching zero makes
    // the wasted work a single point mass, so Var(Y) -> E[f] * 1.
    ScenarioParams unit;
    unit.mean_processing = 1;
    unit.checkpoint_cost = 1e-12;
    unit.restore_cost = 0;
    unit.mean_offtime = 0;
    unit.mean_idle = 0;
    unit.mean_failures = 1;
    CHECK(an::variance_inter_completion(unit, CheckpointPolicy::single(1)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("variance picks up idle and off-time dispersion when exponential") {
    ScenarioParams p = ScenarioParams::rf1();
    const double base = an::variance_inter_completion(p, CheckpointPolicy::single(10));
    p.idle_dist = TimeDist::Exponential;
    CHECK(an::variance_inter_completion(p, CheckpointPolicy::single(10)) ==
          base + p.mean_idle * p.mean_idle);
    p.idle_dist = TimeDist::Deterministic;
    p.offtime_dist = TimeDist::Exponential;
    // Exponential off-time adds Var(R) = E[R]^2 per failure.
    CHECK(an::variance_inter_completion(p, CheckpointPolicy::single(10)) ==
          base + p.mean_failures * p.mean_offtime * p.mean_offtime);
}

TEST_CASE("average age in closed form") {
    const auto rf1 = ScenarioParams::rf1();
    CHECK(an::avg_aoi_mixed(rf1, 10, 0.0) == 2905.0);
    CHECK(an::avg_aoi_mixed(rf1, 10, 119940.0) ==
          doctest::Approx(2905.0 + 119940.0 / 4140.0).epsilon(1e-12));

    // Agreement with the generic moment form Var/(2E[Y]) + 1.5 E[Y] - E[I].
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> uv(0.0, 1e6);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_params(rng);
        const double h = random_h(p, rng);
        const double var = uv(rng);
        const double ey = an::expected_inter_completion(p, h);
        const double generic = var / (2.0 * ey) + 1.5 * ey - p.mean_idle;
        CHECK(rel_err(an::avg_aoi_mixed(p, h, var), generic) < 1e-9);
    }

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::avg_aoi_mixed(nofail, 4, 0.0) ==
          doctest::Approx(1.5 * (200.0 + 500.0 + 5.0 * 4) - 200.0));
    CHECK_THROWS_AS(an::avg_aoi_mixed(rf1, 10, -1.0), std::domain_error);
}

TEST_CASE("numeric average-age minimizer") {
    const auto rf1 = ScenarioParams::rf1();

    // With the variance forced to zero the objective shares the a/h + b*h
    // shape of the peak-age expression, so the optimum coincides.
    {
        double best_h = 0, best = 1e300;
        for (double h = 1e-3; h <= 200.0; h += 1e-3) {
            const double v = an::avg_aoi_mixed(rf1, h, 0.0);
            if (v < best) {
                best = v;
                best_h = h;
            }
        }
        CHECK(best_h == doctest::Approx(std::sqrt(750.0)).epsilon(1e-4));
    }

    // Full variance model: interior optimum verified against grid search.
    const double h_star = an::optimal_h_aoi(rf1);
    CHECK(h_star > 0.0);
    CHECK(h_star <= 500.0);
    const auto objective = [&](double h) {
        return an::avg_aoi_mixed(
            rf1, h, an::variance_inter_completion(rf1, CheckpointPolicy::single(h)));
    };
    const double best = objective(h_star);
    for (double h = 1e-3; h <= 500.0; h += 1e-3)
        CHECK(objective(h) >= best - 1e-6);
    CHECK(objective(h_star) <= objective(h_star - 1e-6) + 1e-9);
    CHECK(objective(h_star) <= objective(h_star + 1e-6) + 1e-9);

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK_THROWS_AS(an::optimal_h_aoi(nofail), an::NoInteriorMinimum);
    // For f > 0 an interior optimum always exists (the variance term grows
    // like f/h^2 near zero) but it collapses toward h = 0 with the rate.
    ScenarioParams tiny = rf1;
    tiny.mean_failures = 1e-9;
    CHECK(an::optimal_h_aoi(tiny) < 1e-2);
}

TEST_CASE("single-memory baselines") {
    const auto rf1 = ScenarioParams::rf1();
    const auto rf2 = ScenarioParams::rf2();
    CHECK(an::paoi_nvm(rf1) == 2700.0);
    CHECK(an::paoi_nvm(rf2) == 2100.0);
    CHECK(an::paoi_vm(rf1) == 16215.0);
    CHECK(an::paoi_vm(rf2) == 7506.0);

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::paoi_nvm(nofail) == nofail.mean_idle + 2.0 * nofail.mean_processing);
    CHECK(an::paoi_vm(nofail) == an::paoi_nvm(nofail));
}

TEST_CASE("mixed-vs-NVM gap and the NVM dominance lemma") {
    const auto rf1 = ScenarioParams::rf1();
    const auto rf2 = ScenarioParams::rf2();
    CHECK(an::paoi_gap_mm_nvm(rf1, 10) == 1240.0);
    CHECK(an::paoi_gap_mm_nvm(rf1, 10) ==
          an::paoi_mixed(rf1, 10) - an::paoi_nvm(rf1));
    CHECK(an::paoi_gap_mm_nvm(rf2, 10) == 556.0);
    CHECK(an::paoi_gap_mm_nvm(rf2, 10) ==
          an::paoi_mixed(rf2, 10) - an::paoi_nvm(rf2));

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::paoi_gap_mm_nvm(nofail, 7) == 2.0 * 5.0 * 7);

    std::mt19937_64 rng(16);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        const double h = random_h(p, rng);
        CHECK(an::paoi_gap_mm_nvm(p, h) >= 0.0);
        CHECK(rel_err(an::paoi_gap_mm_nvm(p, h),
                      an::paoi_mixed(p, h) - an::paoi_nvm(p)) < 1e-9);
    }
}

TEST_CASE("VM comparison has witnesses in both directions") {
    const auto rf1 = ScenarioParams::rf1();
    CHECK(an::paoi_vm(rf1) > an::paoi_mixed(rf1, 10));  // 16215 > 3940
    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::paoi_vm(nofail) < an::paoi_mixed(nofail, 1));  // 1200 < 1210
}

TEST_CASE("split-frequency wasted work") {
    CHECK(an::expected_wasted_work_split(5, 20, 5) == 11.5);
    CHECK(an::expected_wasted_work_split(1, 1, 1) == 1.5);
    // Equal intervals reduce to the single-frequency expression.
    for (double k : {1.0, 7.0, 50.0})
        CHECK(an::expected_wasted_work_split(k, k, 5) ==
              an::expected_wasted_work(k, 5));

    // Length-weighted mixture of the two uniform means.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uk(1.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double ka = uk(rng), kb = uk(rng), d = 0.5 + uk(rng) / 10.0;
        const double pa = ka / (ka + kb);
        const double mixture = pa * (ka + d + 1.0) / 2.0 +
                               (1.0 - pa) * (kb + d + 1.0) / 2.0;
        CHECK(std::abs(an::expected_wasted_work_split(ka, kb, d) - mixture) < 1e-12);
    }
}

TEST_CASE("split-frequency peak age") {
    const auto rf1 = ScenarioParams::rf1();
    CHECK(an::paoi_sfc(rf1, SplitFrequency{5, 20, 20, 20}) == 3745.0);

    ScenarioParams nofail = rf1;
    nofail.mean_failures = 0;
    CHECK(an::paoi_sfc(nofail, SplitFrequency{5, 20, 20, 20}) == 1600.0);

    CHECK_THROWS_AS(an::paoi_sfc(rf1, SplitFrequency{5, 20, 20, 21}),
                    ValidationError);
}

TEST_CASE("split-frequency reduces to single-frequency when intervals match") {
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> uk(1.0, 100.0);
    std::uniform_real_distribution<double> uh(0.5, 50.0);
    for (int i = 0; i < 1000; ++i) {
        auto p = random_params(rng);
        const double k = uk(rng);
        const double ha = uh(rng), hb = uh(rng);
        p.mean_processing = (ha + hb) * k;  // satisfy the budget identity
        const double sfc = an::paoi_sfc(p, SplitFrequency{k, k, ha, hb});
        const double single = an::paoi_mixed(p, ha + hb);
        CHECK(rel_err(sfc, single) < 1e-12);
    }
}
