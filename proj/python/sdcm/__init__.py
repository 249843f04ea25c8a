"""Spatial DCM planner, controller and simulator.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Scenario documents are JSON strings in the same format the
command line tool consumes, see README.md.
"""

from sdcm._core import (
    PlannerParams,
    analytic_closed_loop,
    angular_dcm,
    angular_tracking_law,
    augment_ecmp,
    bundled_config,
    bundled_scenarios,
    closed_loop_matrices,
    cop_from_torque,
    derive_constants,
    ecmp_force,
    ecmp_from_vrp,
    linear_dcm,
    linear_tracking_law,
    open_loop_matrices,
    run_bundled,
    run_scenario,
    saturate_torque,
    trajectory_csv,
    vro_torque,
    vrp_from_ecmp,
)

__all__ = [
    "PlannerParams",
    "analytic_closed_loop",
    "angular_dcm",
    "angular_tracking_law",
    "augment_ecmp",
    "bundled_config",
    "bundled_scenarios",
    "closed_loop_matrices",
    "cop_from_torque",
    "derive_constants",
    "ecmp_force",
    "ecmp_from_vrp",
    "linear_dcm",
    "linear_tracking_law",
    "open_loop_matrices",
    "run_bundled",
    "run_scenario",
    "saturate_torque",
    "trajectory_csv",
    "vro_torque",
    "vrp_from_ecmp",
]
