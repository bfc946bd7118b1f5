#include "aoisim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aoisim/analytic.hpp"
#include "aoisim/format.hpp"
#include "aoisim/simulator.hpp"

namespace aoisim {

namespace {

void check_grid(const SweepSpec& spec, std::vector<InvalidParameter>& out) {
    if (spec.scenarios.empty()) out.push_back({"scenarios", "must be nonempty"});
    if (spec.grid.empty()) {
        out.push_back({"grid", "must be nonempty"});
        return;
    }
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1])) {
            out.push_back({"grid", "must be strictly increasing"});
            break;
        }
    for (double x : spec.grid) {
        if (spec.variable == SweptVariable::MeanFailures) {
            if (x < 0) {
                out.push_back({"grid", "failure rates must be >= 0"});
                break;
            }
        } else {
            bool ok = x > 0;
            for (const auto& [name, params] : spec.scenarios)
                ok = ok && params.mean_processing / x >= 1.0;
            if (!ok) {
                out.push_back({"grid", "checkpoint counts must lie in (0, mean_processing]"});
                break;
            }
        }
    }
}

void require(const SweepSpec& spec, SweptVariable expected) {
    std::vector<InvalidParameter> out;
    if (spec.variable != expected)
        out.push_back({"variable", "wrong swept variable for this experiment"});
    check_grid(spec, out);
    if (spec.with_simulation && spec.sim_cycles < 2)
        out.push_back({"sim_cycles", "must be >= 2"});
    if (!out.empty()) throw ValidationError(std::move(out));
}

struct SimPoint {
    double mean_peak;
    double stderr_peak;
};

SimPoint simulate_peak(const ScenarioParams& params, const CheckpointPolicy& policy,
                       Architecture arch, const SweepSpec& spec, std::uint64_t index) {
    RunConfig cfg;
    cfg.n_cycles = spec.sim_cycles;
    cfg.seed = derive_seed(spec.seed, index);
    cfg.params = params;
    cfg.policy = policy;
    cfg.architecture = arch;
    cfg.jobs = spec.jobs;
    const AoiStats st = empirical_stats(run(cfg));
    const double nan = std::nan("");
    return {st.mean_peak_age.value_or(nan), st.std_err_peak.value_or(nan)};
}

std::string policy_label(const ScenarioParams& base, const CheckpointPolicy& policy) {
    if (!policy.is_single()) return "sfc";
    const double k = base.mean_processing / policy.as_single().checkpoints_per_cycle;
    std::ostringstream os;
    os << "K" << fmt_g(k, 6);
    return os.str();
}

// h -> 0 limit of the mixed-memory peak age; used as the optimal-h
// reference when checkpointing cannot help (no failures).
double paoi_opt_reference(const ScenarioParams& params) {
    if (params.mean_failures > 0)
        return analytic::paoi_mixed(params, analytic::optimal_h_paoi(params));
    return params.mean_idle + 2.0 * params.mean_processing;
}

}  // namespace

SweepResult sweep_paoi_vs_h(const SweepSpec& spec) {
    require(spec, SweptVariable::CheckpointCount);
    SweepResult res;
    res.columns.push_back("h");
    for (const auto& [name, params] : spec.scenarios) {
        res.columns.push_back("paoi_" + name);
        if (spec.with_simulation) {
            res.columns.push_back("paoi_" + name + "_sim");
            res.columns.push_back("paoi_" + name + "_sim_stderr");
        }
        res.columns.push_back("h_opt_" + name);
    }
    std::uint64_t sim_index = 0;
    for (double h : spec.grid) {
        std::vector<double> row{h};
        for (const auto& [name, params] : spec.scenarios) {
            row.push_back(analytic::paoi_mixed(params, h));
            if (spec.with_simulation) {
                const auto pt = simulate_peak(params, CheckpointPolicy::single(h),
                                              Architecture::MixedMemory, spec,
                                              sim_index++);
                row.push_back(pt.mean_peak);
                row.push_back(pt.stderr_peak);
            }
            row.push_back(params.mean_failures > 0 ? analytic::optimal_h_paoi(params)
                                                   : 0.0);
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

SweepResult compare_architectures(const SweepSpec& spec) {
    require(spec, SweptVariable::MeanFailures);
    const CheckpointPolicy policy =
        spec.policies.empty() ? CheckpointPolicy::single(10.0) : spec.policies.front();
    const double h = policy.is_single() ? policy.as_single().checkpoints_per_cycle : 10.0;
    const std::vector<Architecture> archs =
        spec.architectures.empty()
            ? std::vector<Architecture>{Architecture::MixedMemory, Architecture::NvmOnly,
                                        Architecture::VmOnly}
            : spec.architectures;

    SweepResult res;
    res.columns = {"f", "paoi_mm", "paoi_nvm", "paoi_vm"};
    if (spec.with_simulation)
        for (Architecture a : archs) {
            const std::string tag = a == Architecture::MixedMemory  ? "mm"
                                    : a == Architecture::NvmOnly    ? "nvm"
                                                                    : "vm";
            res.columns.push_back("paoi_" + tag + "_sim");
            res.columns.push_back("paoi_" + tag + "_sim_stderr");
        }

    std::uint64_t sim_index = 0;
    for (double f : spec.grid) {
        ScenarioParams params = spec.base();
        params.mean_failures = f;
        std::vector<double> row{f, analytic::paoi_mixed(params, h),
                                analytic::paoi_nvm(params), analytic::paoi_vm(params)};
        if (spec.with_simulation)
            for (Architecture a : archs) {
                const auto pt = simulate_peak(params, policy, a, spec, sim_index++);
                row.push_back(pt.mean_peak);
                row.push_back(pt.stderr_peak);
            }
        res.rows.push_back(std::move(row));
    }
    return res;
}

SweepResult compare_policies(const SweepSpec& spec) {
    require(spec, SweptVariable::MeanFailures);
    std::vector<CheckpointPolicy> policies = spec.policies;
    if (policies.empty()) {
        const double proc = spec.base().mean_processing;
        // Equal-count allocation: h_alpha = h_beta = P / (k_alpha + k_beta).
        policies = {CheckpointPolicy::split(5, 20, proc / 25.0, proc / 25.0),
                    CheckpointPolicy::single(proc / 5.0),
                    CheckpointPolicy::single(proc / 20.0)};
    }

    SweepResult res;
    res.columns.push_back("f");
    for (const auto& policy : policies) {
        const std::string label = policy_label(spec.base(), policy);
        res.columns.push_back("paoi_" + label);
        if (spec.with_simulation) {
            res.columns.push_back("paoi_" + label + "_sim");
            res.columns.push_back("paoi_" + label + "_sim_stderr");
        }
    }
    res.columns.push_back("paoi_opt");

    std::uint64_t sim_index = 0;
    for (double f : spec.grid) {
        ScenarioParams params = spec.base();
        params.mean_failures = f;
        std::vector<double> row{f};
        for (const auto& policy : policies) {
            row.push_back(policy.is_single()
                              ? analytic::paoi_mixed(
                                    params, policy.as_single().checkpoints_per_cycle)
                              : analytic::paoi_sfc(params, policy.as_split()));
            if (spec.with_simulation) {
                const auto pt = simulate_peak(params, policy, Architecture::MixedMemory,
                                              spec, sim_index++);
                row.push_back(pt.mean_peak);
                row.push_back(pt.stderr_peak);
            }
        }
        row.push_back(paoi_opt_reference(params));
        res.rows.push_back(std::move(row));
    }
    return res;
}

std::string SweepResult::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << fmt_g(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string SweepResult::to_plot_data() const {
    std::ostringstream os;
    os << '#';
    for (const auto& c : columns) os << ' ' << c;
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? " " : "") << fmt_g(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string SweepResult::to_svg() const {
    constexpr int width = 720, height = 480, margin = 60;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::isnan(row[i])) continue;
            double& lo = i == 0 ? xmin : ymin;
            double& hi = i == 0 ? xmax : ymax;
            lo = std::min(lo, row[i]);
            hi = std::max(hi, row[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;

    const auto px = [&](double x) {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    const auto py = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
       << width - margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    for (std::size_t c = 1; c < columns.size(); ++c) {
        const char* color = palette[(c - 1) % 8];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& row : rows) {
            if (std::isnan(row[c])) continue;
            os << fmt_g(px(row[0]), 6) << ',' << fmt_g(py(row[c]), 6) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << width - margin + 4 << "\" y=\""
           << margin + 16 * static_cast<int>(c) << "\" font-size=\"11\" fill=\""
           << color << "\">" << columns[c] << "</text>\n";
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - margin / 3
       << "\" font-size=\"12\" text-anchor=\"middle\">" << columns[0]
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace aoisim
