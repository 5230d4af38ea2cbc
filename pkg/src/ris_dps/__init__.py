"""Optimal RIS configuration with arbitrary non-uniform discrete phase shifts.

Library layout:
    geometry     angle utilities on complex channel coefficients
    channel      phase-shift sets, link budgets, random realizations
    optimizer    the linear-time sweep, plus exhaustive/CPP baselines
    metrics      capacity and performance-gain metrics
    analysis     empty-region widths and circle-coverage measurements
    experiments  seeded scenario runner behind the ris-dps CLI
"""

__version__ = "0.1.0"

from .analysis import (EmptyRatioReport, EmptyRegion, circle_union_length,
                       empty_ratio_upper_bound_approx, empty_regions,
                       measured_empty_ratio, omega_large_gap, omega_small_gap,
                       write_regions_csv)
from .channel import (OFF, ChannelRealization, LinkBudget, PhaseShiftSet,
                      f_vector, overall_h, realize_g, sample_realization)
from .geometry import (ANGLE_EPS, TWO_PI, angle_between, arg_mod_2pi,
                       circular_distance, unit_from_arg, wrap_angle)
from .experiments import (ResultRow, Scenario, builtin_scenarios, get_builtin,
                          regions_dump, run_scenario, write_meta_json,
                          write_rows_csv)
from .metrics import CapacityReport, capacity, performance_gain
from .optimizer import (DEFAULT_EXHAUSTIVE_CAP, SeparationLine, SweepCounters,
                        SweepResult, config_given_direction,
                        continuous_upper_bound, cpp_optimize,
                        exhaustive_optimize, separation_lines,
                        sort_separation_lines, sweep_optimize, update_h)

__all__ = [
    "ANGLE_EPS", "TWO_PI", "OFF", "DEFAULT_EXHAUSTIVE_CAP", "__version__",
    "angle_between", "arg_mod_2pi", "circular_distance", "unit_from_arg",
    "wrap_angle",
    "ChannelRealization", "LinkBudget", "PhaseShiftSet",
    "f_vector", "overall_h", "realize_g", "sample_realization",
    "SeparationLine", "SweepCounters", "SweepResult",
    "config_given_direction", "continuous_upper_bound", "cpp_optimize",
    "exhaustive_optimize", "separation_lines", "sort_separation_lines",
    "sweep_optimize", "update_h",
    "CapacityReport", "capacity", "performance_gain",
    "EmptyRatioReport", "EmptyRegion", "circle_union_length",
    "empty_ratio_upper_bound_approx", "empty_regions", "measured_empty_ratio",
    "omega_large_gap", "omega_small_gap", "write_regions_csv",
    "ResultRow", "Scenario", "builtin_scenarios", "get_builtin",
    "regions_dump", "run_scenario", "write_meta_json", "write_rows_csv",
]
