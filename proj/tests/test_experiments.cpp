#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aoisim/analytic.hpp"
#include "aoisim/experiments.hpp"

using namespace aoisim;

namespace {

SweepSpec rf1_spec(SweptVariable variable, std::vector<double> grid) {
    SweepSpec s;
    s.scenarios = {{"RF1", ScenarioParams::rf1()}};
    s.variable = variable;
    s.grid = std::move(grid);
    return s;
}

int column(const SweepResult& res, const std::string& name) {
    const auto it = std::find(res.columns.begin(), res.columns.end(), name);
    REQUIRE(it != res.columns.end());
    return static_cast<int>(it - res.columns.begin());
}

}  // namespace

TEST_CASE("peak age versus h at pinned grid points") {
    auto spec = rf1_spec(SweptVariable::CheckpointCount, {10.0, 27.386, 100.0});
    const auto res = sweep_paoi_vs_h(spec);
    REQUIRE(res.rows.size() == 3);
    const int c = column(res, "paoi_RF1");
    CHECK(res.rows[0][c] == 3940.0);
    CHECK(res.rows[1][c] == doctest::Approx(3637.72).epsilon(1e-4));
    CHECK(res.rows[2][c] == 4165.0);
    CHECK(res.rows[0][column(res, "h_opt_RF1")] ==
          doctest::Approx(std::sqrt(750.0)).epsilon(1e-12));
}

TEST_CASE("single-point grid produces a single row") {
    auto spec = rf1_spec(SweptVariable::CheckpointCount, {std::sqrt(750.0)});
    const auto res = sweep_paoi_vs_h(spec);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0][column(res, "paoi_RF1")] ==
          doctest::Approx(analytic::paoi_mixed(ScenarioParams::rf1(),
                                               std::sqrt(750.0))));
}

TEST_CASE("RF2 needs fewer checkpoints than RF1") {
    SweepSpec spec;
    spec.scenarios = {{"RF1", ScenarioParams::rf1()}, {"RF2", ScenarioParams::rf2()}};
    spec.variable = SweptVariable::CheckpointCount;
    for (int h = 1; h <= 100; ++h) spec.grid.push_back(h);
    const auto res = sweep_paoi_vs_h(spec);
    const int c1 = column(res, "paoi_RF1");
    const int c2 = column(res, "paoi_RF2");
    const auto argmin = [&](int c) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < res.rows.size(); ++i)
            if (res.rows[i][c] < res.rows[best][c]) best = i;
        return res.rows[best][0];
    };
    CHECK(argmin(c2) < argmin(c1));
    CHECK(res.rows[0][column(res, "h_opt_RF1")] ==
          doctest::Approx(std::sqrt(750.0)).epsilon(1e-9));
    CHECK(res.rows[0][column(res, "h_opt_RF2")] ==
          doctest::Approx(std::sqrt(300.0)).epsilon(1e-9));
}

TEST_CASE("invalid grids are rejected with all violations named") {
    auto spec = rf1_spec(SweptVariable::CheckpointCount, {});
    CHECK_THROWS_AS(sweep_paoi_vs_h(spec), ValidationError);
    spec.grid = {10.0, 5.0};
    CHECK_THROWS_AS(sweep_paoi_vs_h(spec), ValidationError);
    spec.grid = {10.0};
    CHECK_THROWS_AS(compare_architectures(spec), ValidationError);  // wrong variable
}

TEST_CASE("architecture comparison across failure rates") {
    auto spec = rf1_spec(SweptVariable::MeanFailures, {0.0, 1.0, 15.0});
    const auto res = compare_architectures(spec);
    const int mm = column(res, "paoi_mm");
    const int nvm = column(res, "paoi_nvm");
    const int vm = column(res, "paoi_vm");
    CHECK(res.rows[0][mm] == 1300.0);
    CHECK(res.rows[0][nvm] == 1200.0);
    CHECK(res.rows[0][vm] == 1200.0);
    CHECK(res.rows[2][mm] == 3940.0);
    CHECK(res.rows[2][nvm] == 2700.0);
    CHECK(res.rows[2][vm] == 16215.0);
    for (const auto& row : res.rows) CHECK(row[nvm] <= row[mm]);
}

TEST_CASE("VM crossover is strictly positive and finite") {
    std::vector<double> grid;
    for (int f = 0; f <= 50; ++f) grid.push_back(f);
    const auto res = compare_architectures(rf1_spec(SweptVariable::MeanFailures, grid));
    const int mm = column(res, "paoi_mm");
    const int vm = column(res, "paoi_vm");
    double crossover = -1;
    for (const auto& row : res.rows)
        if (row[vm] > row[mm]) {
            crossover = row[0];
            break;
        }
    CHECK(crossover > 0.0);
    CHECK(crossover <= 50.0);
}

TEST_CASE("architecture columns are monotone nondecreasing in f") {
    std::vector<double> grid;
    for (int f = 0; f <= 40; f += 2) grid.push_back(f);
    const auto res = compare_architectures(rf1_spec(SweptVariable::MeanFailures, grid));
    for (std::size_t c = 1; c < res.columns.size(); ++c)
        for (std::size_t i = 1; i < res.rows.size(); ++i)
            CHECK(res.rows[i][c] >= res.rows[i - 1][c]);
}

TEST_CASE("policy comparison with the default split and fixed-K policies") {
    auto spec = rf1_spec(SweptVariable::MeanFailures, {0.0, 15.0, 50.0, 55.0});
    const auto res = compare_policies(spec);
    const int sfc = column(res, "paoi_sfc");
    const int k5 = column(res, "paoi_K5");
    const int k20 = column(res, "paoi_K20");
    const int opt = column(res, "paoi_opt");

    CHECK(res.rows[0][sfc] == 1600.0);
    CHECK(res.rows[0][k5] == 2200.0);
    CHECK(res.rows[0][k20] == 1450.0);
    CHECK(res.rows[1][sfc] == 3745.0);

    // K=5 and K=20 cross at f = 50 under the equal-count allocation.
    CHECK(res.rows[2][k5] == doctest::Approx(res.rows[2][k20]).epsilon(1e-12));
    CHECK(res.rows[1][k5] > res.rows[1][k20]);
    CHECK(res.rows[3][k5] < res.rows[3][k20]);

    // The optimal-h reference lower-bounds every policy at every grid point.
    for (const auto& row : res.rows) {
        CHECK(row[opt] <= row[sfc] + 1e-9);
        CHECK(row[opt] <= row[k5] + 1e-9);
        CHECK(row[opt] <= row[k20] + 1e-9);
    }
}

TEST_CASE("simulated columns land within three standard errors") {
    auto spec = rf1_spec(SweptVariable::CheckpointCount, {10.0, 25.0});
    spec.with_simulation = true;
    spec.sim_cycles = 10000;
    spec.seed = 2024;
    const auto res = sweep_paoi_vs_h(spec);
    const int a = column(res, "paoi_RF1");
    const int s = column(res, "paoi_RF1_sim");
    const int e = column(res, "paoi_RF1_sim_stderr");
    for (const auto& row : res.rows)
        CHECK(std::abs(row[s] - row[a]) < 3.0 * row[e]);

    auto aspec = rf1_spec(SweptVariable::MeanFailures, {5.0, 15.0});
    aspec.with_simulation = true;
    aspec.sim_cycles = 10000;
    aspec.seed = 2025;
    const auto ares = compare_architectures(aspec);
    for (const char* tag : {"mm", "nvm", "vm"}) {
        const int ac = column(ares, std::string("paoi_") + tag);
        const int sc = column(ares, std::string("paoi_") + tag + "_sim");
        const int ec = column(ares, std::string("paoi_") + tag + "_sim_stderr");
        for (const auto& row : ares.rows)
            CHECK(std::abs(row[sc] - row[ac]) < 3.0 * row[ec]);
    }

    auto pspec = rf1_spec(SweptVariable::MeanFailures, {15.0});
    pspec.with_simulation = true;
    pspec.sim_cycles = 10000;
    pspec.seed = 2026;
    const auto pres = compare_policies(pspec);
    for (const char* tag : {"sfc", "K5", "K20"}) {
        const int ac = column(pres, std::string("paoi_") + tag);
        const int sc = column(pres, std::string("paoi_") + tag + "_sim");
        const int ec = column(pres, std::string("paoi_") + tag + "_sim_stderr");
        for (const auto& row : pres.rows)
            CHECK(std::abs(row[sc] - row[ac]) < 3.0 * row[ec]);
    }
}

TEST_CASE("CSV and plot emission") {
    auto spec = rf1_spec(SweptVariable::CheckpointCount, {10.0, 20.0});
    const auto res = sweep_paoi_vs_h(spec);
    const std::string csv = res.to_csv();
    CHECK(csv.substr(0, csv.find('\n')) == "h,paoi_RF1,h_opt_RF1");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const std::string dat = res.to_plot_data();
    CHECK(dat.rfind("# h paoi_RF1 h_opt_RF1", 0) == 0);
    const std::string svg = res.to_svg();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
}
