#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aoisim/analytic.hpp"
#include "aoisim/params.hpp"
#include "aoisim/simulator.hpp"

namespace py = pybind11;
using namespace aoisim;

namespace {

Architecture parse_arch(const std::string& name) {
    if (name == "mixed") return Architecture::MixedMemory;
    if (name == "nvm") return Architecture::NvmOnly;
    if (name == "vm") return Architecture::VmOnly;
    throw py::value_error("architecture must be 'mixed', 'nvm', or 'vm'");
}

RunTrace run_from_args(const ScenarioParams& params, const CheckpointPolicy& policy,
                       std::int64_t n_cycles, std::uint64_t seed,
                       const std::string& architecture, int jobs) {
    RunConfig cfg;
    cfg.params = params;
    cfg.policy = policy;
    cfg.n_cycles = n_cycles;
    cfg.seed = seed;
    cfg.architecture = parse_arch(architecture);
    cfg.jobs = jobs;
    return run(cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Age-of-information model of an intermittently-powered "
              "checkpointing sensor device";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::enum_<FailureCountDist>(m, "FailureCountDist")
        .value("POISSON", FailureCountDist::Poisson)
        .value("FIXED", FailureCountDist::FixedCount);
    py::enum_<TimeDist>(m, "TimeDist")
        .value("DETERMINISTIC", TimeDist::Deterministic)
        .value("EXPONENTIAL", TimeDist::Exponential);

    py::class_<ScenarioParams>(m, "ScenarioParams")
        .def(py::init<>())
        .def_readwrite("mean_processing", &ScenarioParams::mean_processing)
        .def_readwrite("mean_offtime", &ScenarioParams::mean_offtime)
        .def_readwrite("mean_failures", &ScenarioParams::mean_failures)
        .def_readwrite("mean_idle", &ScenarioParams::mean_idle)
        .def_readwrite("checkpoint_cost", &ScenarioParams::checkpoint_cost)
        .def_readwrite("restore_cost", &ScenarioParams::restore_cost)
        .def_readwrite("failure_count_dist", &ScenarioParams::failure_count_dist)
        .def_readwrite("offtime_dist", &ScenarioParams::offtime_dist)
        .def_readwrite("idle_dist", &ScenarioParams::idle_dist)
        .def_static("rf1", &ScenarioParams::rf1)
        .def_static("rf2", &ScenarioParams::rf2)
        .def("__eq__", [](const ScenarioParams& a, const ScenarioParams& b) {
            return a == b;
        });

    py::class_<CheckpointPolicy>(m, "CheckpointPolicy")
        .def_static("single", &CheckpointPolicy::single, py::arg("h"))
        .def_static("split", &CheckpointPolicy::split, py::arg("k_alpha"),
                    py::arg("k_beta"), py::arg("h_alpha"), py::arg("h_beta"));

    py::class_<AoiStats>(m, "AoiStats")
        .def_readonly("mean_y", &AoiStats::mean_y)
        .def_readonly("mean_y_sq", &AoiStats::mean_y_sq)
        .def_readonly("mean_s", &AoiStats::mean_s)
        .def_readonly("mean_idle", &AoiStats::mean_idle)
        .def_readonly("mean_peak_age", &AoiStats::mean_peak_age)
        .def_readonly("std_err_peak", &AoiStats::std_err_peak)
        .def_readonly("time_avg_age", &AoiStats::time_avg_age)
        .def_readonly("arrival_rate", &AoiStats::arrival_rate)
        .def_readonly("n_cycles", &AoiStats::n_cycles);

    m.def("validate", &validate, py::arg("params"), py::arg("policy"));

    m.def("expected_wasted_work", &analytic::expected_wasted_work, py::arg("k"),
          py::arg("d"));
    m.def("expected_inter_completion", &analytic::expected_inter_completion,
          py::arg("params"), py::arg("h"));
    m.def("expected_completion", &analytic::expected_completion, py::arg("params"),
          py::arg("h"));
    m.def("paoi_mixed", &analytic::paoi_mixed, py::arg("params"), py::arg("h"));
    m.def("optimal_h_paoi", &analytic::optimal_h_paoi, py::arg("params"));
    m.def("variance_inter_completion", &analytic::variance_inter_completion,
          py::arg("params"), py::arg("policy"));
    m.def("avg_aoi_mixed", &analytic::avg_aoi_mixed, py::arg("params"), py::arg("h"),
          py::arg("var_y"));
    m.def("optimal_h_aoi", &analytic::optimal_h_aoi, py::arg("params"));
    m.def("paoi_nvm", &analytic::paoi_nvm, py::arg("params"));
    m.def("paoi_vm", &analytic::paoi_vm, py::arg("params"));
    m.def("paoi_gap_mm_nvm", &analytic::paoi_gap_mm_nvm, py::arg("params"),
          py::arg("h"));
    m.def("expected_wasted_work_split", &analytic::expected_wasted_work_split,
          py::arg("k_alpha"), py::arg("k_beta"), py::arg("d"));
    m.def(
        "paoi_sfc",
        [](const ScenarioParams& p, const CheckpointPolicy& policy) {
            if (policy.is_single())
                throw py::value_error("paoi_sfc needs a split-frequency policy");
            return analytic::paoi_sfc(p, policy.as_split());
        },
        py::arg("params"), py::arg("policy"));

    m.def(
        "simulate",
        [](const ScenarioParams& params, const CheckpointPolicy& policy,
           std::int64_t n_cycles, std::uint64_t seed, const std::string& architecture,
           int jobs) {
            return empirical_stats(
                run_from_args(params, policy, n_cycles, seed, architecture, jobs));
        },
        py::arg("params"), py::arg("policy"), py::arg("n_cycles"), py::arg("seed") = 1,
        py::arg("architecture") = "mixed", py::arg("jobs") = 1,
        "Run the Monte Carlo simulator and return empirical statistics.");

    m.def(
        "simulate_trace",
        [](const ScenarioParams& params, const CheckpointPolicy& policy,
           std::int64_t n_cycles, std::uint64_t seed, const std::string& architecture,
           int jobs) {
            const RunTrace trace =
                run_from_args(params, policy, n_cycles, seed, architecture, jobs);
            std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t,
                                   std::int64_t>>
                rows;
            rows.reserve(trace.cycles.size());
            for (const auto& c : trace.cycles)
                rows.emplace_back(c.idle_ticks, c.failures, c.inter_completion,
                                  c.completion);
            return rows;
        },
        py::arg("params"), py::arg("policy"), py::arg("n_cycles"), py::arg("seed") = 1,
        py::arg("architecture") = "mixed", py::arg("jobs") = 1,
        "Per-cycle rows (idle, failures, Y, S).");

    m.def(
        "integrate_sawtooth",
        [](const ScenarioParams& params, const CheckpointPolicy& policy,
           std::int64_t n_cycles, std::uint64_t seed, const std::string& architecture,
           int jobs) {
            return integrate_sawtooth(
                run_from_args(params, policy, n_cycles, seed, architecture, jobs));
        },
        py::arg("params"), py::arg("policy"), py::arg("n_cycles"), py::arg("seed") = 1,
        py::arg("architecture") = "mixed", py::arg("jobs") = 1,
        "Time-average age from the sawtooth trapezoid areas.");
}
