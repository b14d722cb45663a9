"""One-step maps: discrete gradient steps and non-conservative baselines."""

from __future__ import annotations

import numpy as np

from ..dgrad.base import DiscreteGradientScheme
from ..errors import ShapeMismatchError
from ..grid import GridFunction
from ..models.instance import ModelInstance, ModelKind
from .config import EXPLICIT_REPORT, SolverReport, StepConfig
from .problem import DISCRETE_GRADIENT, MIDPOINT, StepProblem
from .solvers import get_solver, newton

# Baseline names accepted by baseline_step and the CLI
BASELINES = ("explicit_euler", "implicit_midpoint", "rk4")

_BASELINE_ALIASES = {
    "ExplicitEuler": "explicit_euler",
    "ImplicitMidpointClassic": "implicit_midpoint",
    "RK4": "rk4",
}


def _solve(problem: StepProblem, cfg: StepConfig) -> tuple[np.ndarray, SolverReport]:
    return get_solver(cfg.solver)(problem, cfg)


def dg_step(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    cfg: StepConfig,
) -> tuple[GridFunction, SolverReport]:
    """Solve (z1 - z0)/Δt = 𝒦_d Ē(z0, z1) for z1.

    DegenerateK models are handed to :func:`dg_step_degenerate`.
    Raises SolverDiverged or SingularJacobian; z1 is withheld on failure.
    """
    if model.kind is ModelKind.DEGENERATE:
        return dg_step_degenerate(model, scheme, z0, cfg)
    problem = StepProblem(model, model.check_state(z0).flat(), cfg.dt, scheme, DISCRETE_GRADIENT)
    x1, report = _solve(problem, cfg)
    return model.state_from_flat(x1), report


def dg_step_degenerate(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    cfg: StepConfig,
) -> tuple[GridFunction, SolverReport]:
    """Solve K (z1 - z0)/Δt = Ē(z0, z1), algebraic rows included, by Newton."""
    if model.kind is not ModelKind.DEGENERATE:
        raise ShapeMismatchError(
            f"dg_step_degenerate needs a DegenerateK model, got {model.kind.value}"
        )
    problem = StepProblem(model, model.check_state(z0).flat(), cfg.dt, scheme, DISCRETE_GRADIENT)
    x1, report = newton(problem, cfg)
    return model.state_from_flat(x1), report


def normalize_baseline(method: str) -> str:
    name = _BASELINE_ALIASES.get(method, method)
    if name not in BASELINES:
        raise ValueError(
            f"Unknown baseline method '{method}'. Valid methods: {', '.join(BASELINES)}"
        )
    return name


def baseline_step_with_report(
    model: ModelInstance,
    z0: GridFunction,
    cfg: StepConfig,
    method: str,
) -> tuple[GridFunction, SolverReport]:
    method = normalize_baseline(method)
    if model.kind is ModelKind.DEGENERATE:
        raise ShapeMismatchError(
            "baselines integrate z_t = 𝒦_d E(z) and cannot handle a singular K"
        )
    x0 = model.check_state(z0).flat()
    dt = cfg.dt
    f = model.rhs_flat
    if method == "explicit_euler":
        return model.state_from_flat(x0 + dt * f(x0)), EXPLICIT_REPORT
    if method == "rk4":
        k1 = f(x0)
        k2 = f(x0 + 0.5 * dt * k1)
        k3 = f(x0 + 0.5 * dt * k2)
        k4 = f(x0 + dt * k3)
        x1 = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return model.state_from_flat(x1), EXPLICIT_REPORT
    problem = StepProblem(model, x0, dt, method=MIDPOINT)
    x1, report = _solve(problem, cfg)
    return model.state_from_flat(x1), report


def baseline_step(
    model: ModelInstance,
    z0: GridFunction,
    cfg: StepConfig,
    method: str,
) -> GridFunction:
    """Explicit Euler, classic implicit midpoint or RK4 on z_t = 𝒦_d E(z)."""
    z1, _ = baseline_step_with_report(model, z0, cfg, method)
    return z1
