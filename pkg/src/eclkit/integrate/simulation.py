"""Trajectories: repeated steps with per-step audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..audit.auditor import audit_step
from ..audit.report import EclReport
from ..dgrad.base import DiscreteGradientScheme
from ..errors import NonFiniteError, SolverDiverged, SolverError
from ..grid import GridFunction
from ..models.instance import ModelInstance
from .config import SolverReport, StepConfig
from .stepper import baseline_step_with_report, dg_step, normalize_baseline

# "dg" or one of the baseline names
DG_METHOD = "dg"


@dataclass
class Trajectory:
    """States z_0..z_n with the reports of each step."""

    model: ModelInstance
    method: str
    dt: float
    states: list[GridFunction] = field(default_factory=list)
    energies: list[float] = field(default_factory=list)
    solver_reports: list[SolverReport] = field(default_factory=list)
    ecl_reports: list[EclReport] = field(default_factory=list)
    completed: bool = True

    @property
    def n_steps(self) -> int:
        return len(self.states) - 1

    @property
    def times(self) -> list[float]:
        return [k * self.dt for k in range(len(self.states))]

    @property
    def final_state(self) -> GridFunction:
        return self.states[-1]

    def energy_drift(self) -> float:
        """ℋ_d(z_n) - ℋ_d(z_0)."""
        return self.energies[-1] - self.energies[0]

    def relative_energy_drift(self) -> float:
        return self.energy_drift() / max(abs(self.energies[0]), np.finfo(float).tiny)

    def max_energy_excursion(self) -> float:
        e = np.asarray(self.energies)
        return float(np.max(np.abs(e - e[0])))

    def max_ecl_residual(self) -> float:
        if not self.ecl_reports:
            return 0.0
        return max(r.max_residual for r in self.ecl_reports)

    def rows(self) -> list[dict]:
        """One summary row per state, step 0 included."""
        out = []
        e0 = self.energies[0]
        for k, (t, e) in enumerate(zip(self.times, self.energies)):
            if k == 0:
                residual, iters = 0.0, 0
            else:
                residual = self.ecl_reports[k - 1].max_residual if self.ecl_reports else 0.0
                iters = self.solver_reports[k - 1].iterations
            out.append(
                {
                    "step": k,
                    "time": t,
                    "total_energy": e,
                    "energy_drift": e - e0,
                    "max_ecl_residual": residual,
                    "newton_iters": iters,
                }
            )
        return out


def run_simulation(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z_init: GridFunction,
    n_steps: int,
    cfg: StepConfig,
    method: str = DG_METHOD,
    audit: bool = True,
    on_step: Optional[Callable[[int], None]] = None,
) -> Trajectory:
    """Advance ``n_steps`` steps, auditing each one against the ECL.

    Fails fast: a solver error is re-raised annotated with the step index and
    carrying the partial trajectory. A step that overflows (explicit
    baselines beyond their stability limit) fails as SolverDiverged.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be nonnegative, got {n_steps}")
    if method != DG_METHOD:
        method = normalize_baseline(method)
    z = model.check_state(z_init)
    traj = Trajectory(model=model, method=method, dt=cfg.dt)
    traj.states.append(z)
    traj.energies.append(model.total_energy(z))

    for k in range(1, n_steps + 1):
        try:
            if method == DG_METHOD:
                z_next, report = dg_step(model, scheme, z, cfg)
            else:
                z_next, report = baseline_step_with_report(model, z, cfg, method)
        except (SolverError, NonFiniteError) as exc:
            if isinstance(exc, SolverError):
                err = exc.at_step(k)
            else:
                err = SolverDiverged(f"step {k}: state became non-finite ({exc})", None, k)
            traj.completed = False
            err.trajectory = traj
            raise err from exc
        traj.solver_reports.append(report)
        if audit:
            traj.ecl_reports.append(audit_step(model, scheme, z, z_next, cfg.dt))
        traj.states.append(z_next)
        traj.energies.append(model.total_energy(z_next))
        z = z_next
        if on_step is not None:
            on_step(k)
    return traj
