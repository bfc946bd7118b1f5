"""Age-of-information model of an intermittently-powered checkpointing sensor."""

from aoisim._core import (
    AoiStats,
    CheckpointPolicy,
    FailureCountDist,
    ScenarioParams,
    TimeDist,
    avg_aoi_mixed,
    expected_completion,
    expected_inter_completion,
    expected_wasted_work,
    expected_wasted_work_split,
    integrate_sawtooth,
    optimal_h_aoi,
    optimal_h_paoi,
    paoi_gap_mm_nvm,
    paoi_mixed,
    paoi_nvm,
    paoi_sfc,
    paoi_vm,
    simulate,
    simulate_trace,
    validate,
    variance_inter_completion,
)

__all__ = [
    "AoiStats",
    "CheckpointPolicy",
    "FailureCountDist",
    "ScenarioParams",
    "TimeDist",
    "avg_aoi_mixed",
    "expected_completion",
    "expected_inter_completion",
    "expected_wasted_work",
    "expected_wasted_work_split",
    "integrate_sawtooth",
    "optimal_h_aoi",
    "optimal_h_paoi",
    "paoi_gap_mm_nvm",
    "paoi_mixed",
    "paoi_nvm",
    "paoi_sfc",
    "paoi_vm",
    "simulate",
    "simulate_trace",
    "validate",
    "variance_inter_completion",
]
