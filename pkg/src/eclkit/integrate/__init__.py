"""Implicit discrete gradient time stepping and baselines."""

from .config import JACOBIANS, SOLVERS, SolverReport, StepConfig
from .problem import StepProblem
from .simulation import DG_METHOD, Trajectory, run_simulation
from .solvers import colour_count, fd_jacobian, fixed_point, newton
from .stepper import BASELINES, baseline_step, dg_step, dg_step_degenerate

__all__ = [
    "BASELINES",
    "DG_METHOD",
    "JACOBIANS",
    "SOLVERS",
    "SolverReport",
    "StepConfig",
    "StepProblem",
    "Trajectory",
    "baseline_step",
    "colour_count",
    "dg_step",
    "dg_step_degenerate",
    "fd_jacobian",
    "fixed_point",
    "newton",
    "run_simulation",
]
