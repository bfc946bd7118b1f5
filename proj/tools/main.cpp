#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aoisim/analytic.hpp"
#include "aoisim/config.hpp"
#include "aoisim/experiments.hpp"
#include "aoisim/format.hpp"
#include "aoisim/simulator.hpp"

namespace {

using namespace aoisim;

struct AnalyticReport {
    double e_y, e_s, e_l, paoi, avg_aoi, var_y, h_opt, nvm, vm;
};

AnalyticReport analytic_report(const ScenarioParams& p, const CheckpointPolicy& policy) {
    validate(p, policy);
    const auto c = analytic::derived_constants(p);
    AnalyticReport r{};
    if (policy.is_single()) {
        const double h = policy.as_single().checkpoints_per_cycle;
        r.e_l = analytic::expected_wasted_work(p.mean_processing / h, p.checkpoint_cost);
        r.e_y = analytic::expected_inter_completion(p, h);
        r.paoi = analytic::paoi_mixed(p, h);
    } else {
        const auto& sp = policy.as_split();
        r.e_l = analytic::expected_wasted_work_split(sp.k_alpha, sp.k_beta,
                                                     p.checkpoint_cost);
        r.e_y = p.mean_failures * (r.e_l + p.mean_offtime + p.restore_cost) + c.c2 +
                p.checkpoint_cost * (sp.h_alpha + sp.h_beta);
        r.paoi = analytic::paoi_sfc(p, sp);
    }
    r.e_s = r.e_y - p.mean_idle;
    r.var_y = analytic::variance_inter_completion(p, policy);
    r.avg_aoi = r.var_y / (2.0 * r.e_y) + 1.5 * r.e_y - p.mean_idle;
    r.h_opt = p.mean_failures > 0 ? analytic::optimal_h_paoi(p)
                                  : std::numeric_limits<double>::quiet_NaN();
    r.nvm = analytic::paoi_nvm(p);
    r.vm = analytic::paoi_vm(p);
    return r;
}

double analytic_peak(const ScenarioParams& p, const CheckpointPolicy& policy,
                     Architecture arch) {
    switch (arch) {
        case Architecture::NvmOnly: return analytic::paoi_nvm(p);
        case Architecture::VmOnly: return analytic::paoi_vm(p);
        default: return analytic_report(p, policy).paoi;
    }
}

void write_file_or_cleanup(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content) || !out.flush()) {
        out.close();
        std::remove(path.c_str());
        throw std::runtime_error("failed writing " + path);
    }
}

int cmd_analytic(const std::string& config_path, bool csv) {
    const ConfigFile cfg = ConfigFile::load(config_path);
    const ScenarioParams p = scenario_from(cfg);
    const CheckpointPolicy policy = policy_from(cfg);
    const AnalyticReport r = analytic_report(p, policy);
    if (csv) {
        std::cout << "e_y,e_s,e_l,paoi,avg_aoi,var_y,optimal_h,paoi_nvm,paoi_vm\n"
                  << fmt_g(r.e_y) << ',' << fmt_g(r.e_s) << ',' << fmt_g(r.e_l) << ','
                  << fmt_g(r.paoi) << ',' << fmt_g(r.avg_aoi) << ',' << fmt_g(r.var_y)
                  << ',' << fmt_g(r.h_opt) << ',' << fmt_g(r.nvm) << ','
                  << fmt_g(r.vm) << '\n';
    } else {
        std::cout << "E[Y]          = " << fmt_g(r.e_y) << '\n'
                  << "E[S]          = " << fmt_g(r.e_s) << '\n'
                  << "E[L]          = " << fmt_g(r.e_l) << '\n'
                  << "PAoI (mixed)  = " << fmt_g(r.paoi) << '\n'
                  << "avg AoI       = " << fmt_g(r.avg_aoi) << '\n'
                  << "Var(Y)        = " << fmt_g(r.var_y) << '\n'
                  << "optimal h     = " << fmt_g(r.h_opt) << '\n'
                  << "PAoI (nvm)    = " << fmt_g(r.nvm) << '\n'
                  << "PAoI (vm)     = " << fmt_g(r.vm) << '\n';
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& trace_path,
                 std::optional<std::uint64_t> seed, int jobs) {
    const ConfigFile cfg = ConfigFile::load(config_path);
    RunConfig rc = run_from(cfg);
    if (seed) rc.seed = *seed;
    rc.jobs = jobs;
    validate(rc.params, rc.policy);

    const RunTrace trace = run(rc);
    const AoiStats st = empirical_stats(trace);
    const double peak_analytic = analytic_peak(rc.params, rc.policy, rc.architecture);

    std::cout << "cycles        = " << st.n_cycles << '\n'
              << "seed          = " << rc.seed << '\n'
              << "architecture  = " << to_string(rc.architecture) << '\n'
              << "mean Y        = " << fmt_g(st.mean_y) << '\n'
              << "mean S        = " << fmt_g(st.mean_s) << '\n'
              << "mean idle     = " << fmt_g(st.mean_idle) << '\n';
    if (st.mean_peak_age) {
        std::cout << "mean peak age = " << fmt_g(*st.mean_peak_age);
        if (st.std_err_peak) {
            const double z = (*st.mean_peak_age - peak_analytic) / *st.std_err_peak;
            std::cout << " +/- " << fmt_g(*st.std_err_peak) << "  (analytic "
                      << fmt_g(peak_analytic) << ", z = " << fmt_g(z) << ')';
        }
        std::cout << '\n';
    } else {
        std::cout << "mean peak age = n/a (needs at least 2 cycles)\n";
    }
    std::cout << "time avg age  = " << fmt_g(st.time_avg_age) << '\n';
    if (trace.cycles.size() >= 2)
        std::cout << "sawtooth age  = " << fmt_g(integrate_sawtooth(trace)) << '\n';

    if (!trace_path.empty()) {
        try {
            write_trace_csv(trace, trace_path);
        } catch (...) {
            std::remove(trace_path.c_str());
            throw;
        }
    }
    return 0;
}

SweepSpec fig3a_spec() {
    SweepSpec s;
    s.scenarios = {{"RF1", ScenarioParams::rf1()}, {"RF2", ScenarioParams::rf2()}};
    s.variable = SweptVariable::CheckpointCount;
    for (int h = 1; h <= 100; ++h) s.grid.push_back(h);
    return s;
}

SweepSpec fig3b_spec() {
    SweepSpec s;
    s.scenarios = {{"RF1", ScenarioParams::rf1()}};
    s.variable = SweptVariable::MeanFailures;
    for (int f = 0; f <= 50; ++f) s.grid.push_back(f);
    s.policies = {CheckpointPolicy::single(10.0)};
    return s;
}

SweepSpec fig3c_spec() {
    SweepSpec s;
    s.scenarios = {{"RF1", ScenarioParams::rf1()}};
    s.variable = SweptVariable::MeanFailures;
    for (int f = 0; f <= 100; f += 5) s.grid.push_back(f);
    return s;
}

int cmd_sweep(const std::string& kind, const std::string& config_path,
              const std::string& out_path, const std::string& plot_path,
              const std::string& svg_path, std::optional<std::uint64_t> seed,
              int jobs) {
    SweepSpec spec;
    std::string experiment;
    if (kind == "fig3a") {
        spec = fig3a_spec();
        experiment = "paoi_vs_h";
    } else if (kind == "fig3b") {
        spec = fig3b_spec();
        experiment = "architectures";
    } else if (kind == "fig3c") {
        spec = fig3c_spec();
        experiment = "policies";
    } else if (kind.empty()) {
        if (config_path.empty())
            throw ConfigError("sweep needs --config or one of fig3a|fig3b|fig3c");
        const ConfigFile cfg = ConfigFile::load(config_path);
        spec = sweep_from(cfg);
        experiment = spec.experiment.empty()
                         ? (spec.variable == SweptVariable::CheckpointCount
                                ? "paoi_vs_h"
                                : "architectures")
                         : spec.experiment;
    } else {
        throw ConfigError("unknown sweep kind '" + kind + "'");
    }
    if (seed) spec.seed = *seed;
    spec.jobs = jobs;

    SweepResult res;
    if (experiment == "paoi_vs_h") res = sweep_paoi_vs_h(spec);
    else if (experiment == "architectures") res = compare_architectures(spec);
    else res = compare_policies(spec);

    const std::string csv_path =
        out_path.empty() ? (kind.empty() ? "sweep" : kind) + ".csv" : out_path;
    write_file_or_cleanup(csv_path, res.to_csv());
    std::cout << "wrote " << csv_path << '\n';
    if (!plot_path.empty()) {
        write_file_or_cleanup(plot_path, res.to_plot_data());
        std::cout << "wrote " << plot_path << '\n';
    }
    if (!svg_path.empty()) {
        write_file_or_cleanup(svg_path, res.to_svg());
        std::cout << "wrote " << svg_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Age-of-information model of an intermittently-powered "
                 "checkpointing sensor device"};
    app.require_subcommand(1);

    std::string config_path, trace_path, out_path, plot_path, svg_path, sweep_kind;
    bool csv = false;
    int jobs = 1;
    std::optional<std::uint64_t> seed;

    auto* analytic_cmd = app.add_subcommand("analytic", "Evaluate the closed forms");
    analytic_cmd->add_option("--config", config_path, "Config file")->required();
    analytic_cmd->add_flag("--csv", csv, "Emit a single CSV row");

    auto* simulate_cmd = app.add_subcommand("simulate", "Run the Monte Carlo simulator");
    simulate_cmd->add_option("--config", config_path, "Config file")->required();
    simulate_cmd->add_option("--trace", trace_path, "Export per-cycle trace CSV");
    simulate_cmd->add_option("--seed", seed, "Override the config seed");
    simulate_cmd->add_option("--jobs", jobs, "Worker threads");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep_cmd->add_option("kind", sweep_kind, "fig3a|fig3b|fig3c (or use --config)");
    sweep_cmd->add_option("--config", config_path, "Config file with a [sweep] section");
    sweep_cmd->add_option("--out", out_path, "Output CSV path");
    sweep_cmd->add_option("--plot", plot_path, "Plot-ready data file path");
    sweep_cmd->add_option("--svg", svg_path, "Render a simple SVG line chart");
    sweep_cmd->add_option("--seed", seed, "Override the sweep seed");
    sweep_cmd->add_option("--jobs", jobs, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analytic_cmd)) return cmd_analytic(config_path, csv);
        if (app.got_subcommand(simulate_cmd))
            return cmd_simulate(config_path, trace_path, seed, jobs);
        return cmd_sweep(sweep_kind, config_path, out_path, plot_path, svg_path, seed,
                         jobs);
    } catch (const aoisim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const aoisim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
