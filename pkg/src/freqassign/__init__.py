"""Worst-case two-ray link budgets and greedy frequency assignment."""

from .channel import (
    SPEED_OF_LIGHT,
    CarrierFrequency,
    FrequencyPair,
    PathLengths,
    PhysicalConstants,
    SceneGeometry,
    envelope_identity_residual,
    k_max,
    max_phase_shift,
    null_distances,
    path_lengths,
    phase_shift,
    receive_power_single,
    sum_power_lower_bound,
    sum_power_two,
    to_decibel,
)
from .worstcase import (
    DistanceInterval,
    WorstCaseResult,
    grid_min,
    phase_uniform_grid,
    worst_case_pair,
    worst_case_single,
)
from .profits import (
    ProfitTable,
    SystemConfig,
    UserProfile,
    build_profit_table,
    pair_profit,
    single_profit,
)
from .qmkp import (
    Assignment,
    Instance,
    assign_random,
    assign_rr_block,
    assign_rr_profits,
    assign_rr_simple,
    exhaustive_solve,
    feasible,
    greedy_construct,
    objective,
    per_knapsack_profits,
    value_density,
    value_density_matrix,
)
from .bench import (
    BenchReport,
    ScenarioConfig,
    TrialResult,
    export_report,
    generate_scenario,
    run_benchmark,
    run_trial,
)

__all__ = [
    "SPEED_OF_LIGHT",
    "CarrierFrequency",
    "FrequencyPair",
    "PathLengths",
    "PhysicalConstants",
    "SceneGeometry",
    "envelope_identity_residual",
    "k_max",
    "max_phase_shift",
    "null_distances",
    "path_lengths",
    "phase_shift",
    "receive_power_single",
    "sum_power_lower_bound",
    "sum_power_two",
    "to_decibel",
    "DistanceInterval",
    "WorstCaseResult",
    "grid_min",
    "phase_uniform_grid",
    "worst_case_pair",
    "worst_case_single",
    "ProfitTable",
    "SystemConfig",
    "UserProfile",
    "build_profit_table",
    "pair_profit",
    "single_profit",
    "Assignment",
    "Instance",
    "assign_random",
    "assign_rr_block",
    "assign_rr_profits",
    "assign_rr_simple",
    "exhaustive_solve",
    "feasible",
    "greedy_construct",
    "objective",
    "per_knapsack_profits",
    "value_density",
    "value_density_matrix",
    "BenchReport",
    "ScenarioConfig",
    "TrialResult",
    "export_report",
    "generate_scenario",
    "run_benchmark",
    "run_trial",
]
