#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aoisim/params.hpp"

namespace aoisim {

enum class SweptVariable { CheckpointCount, MeanFailures };

/// Declarative description of a parameter sweep. Grids are explicit lists
/// so emitted tables are exactly reproducible from config files.
struct SweepSpec {
    std::vector<std::pair<std::string, ScenarioParams>> scenarios;
    SweptVariable variable = SweptVariable::CheckpointCount;
    std::vector<double> grid;
    std::vector<CheckpointPolicy> policies;
    std::vector<Architecture> architectures;
    /// Which experiment consumes this spec: "paoi_vs_h", "architectures",
    /// or "policies". The CLI dispatches on it; the functions ignore it.
    std::string experiment;
    bool with_simulation = false;
    std::int64_t sim_cycles = 10000;
    std::uint64_t seed = 1;
    int jobs = 1;

    const ScenarioParams& base() const { return scenarios.front().second; }
};

struct SweepResult {
    std::vector<std::string> columns;  // first column is the swept variable
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    /// Whitespace-delimited series file for external plotting tools.
    std::string to_plot_data() const;
    /// Minimal SVG line chart of every series against the swept variable.
    std::string to_svg() const;
};

/// Peak age versus checkpoint count for each scenario, plus a constant
/// column with each scenario's analytically optimal h.
SweepResult sweep_paoi_vs_h(const SweepSpec& spec);

/// Mixed-memory versus single-memory peak age as the failure rate varies.
SweepResult compare_architectures(const SweepSpec& spec);

/// Split-frequency versus fixed-interval policies as the failure rate
/// varies, with the optimal-h reference curve.
SweepResult compare_policies(const SweepSpec& spec);

}  // namespace aoisim
