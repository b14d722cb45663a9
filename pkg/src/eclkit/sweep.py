"""Parameter sweeps over (N, dt, scheme) and convergence tables.

Cells are independent and run on a thread pool capped by ``ECLKIT_THREADS``.
Rows come back in cross-product order (N outermost, then dt, then scheme)
whatever the completion order.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from rich.console import Console

from .config import ExperimentConfig
from .errors import ConfigError, EclkitError

console = Console(stderr=True)

THREADS_ENV = "ECLKIT_THREADS"

# Reference runs use this fraction of the smallest swept dt
REFERENCE_REFINEMENT = 8


def sweep_threads() -> int:
    """Worker count from ECLKIT_THREADS, else the CPU count."""
    fallback = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        console.print(
            f"[yellow]Warning: {THREADS_ENV}={raw!r} is not a positive integer, "
            f"using {fallback} threads[/yellow]"
        )
        return fallback
    return value


@dataclass(frozen=True)
class SweepCell:
    n_points: int
    dt: float
    scheme: str


def sweep_cells(ns: list[int], dts: list[float], schemes: list[str]) -> list[SweepCell]:
    if not ns or not dts or not schemes:
        raise ConfigError("sweep grid is empty: give at least one --n, --dt and --scheme")
    return [SweepCell(n, dt, s) for n, dt, s in itertools.product(ns, dts, schemes)]


def _steps_for(final_time: float, dt: float) -> int:
    n = round(final_time / dt)
    if n < 1 or not math.isclose(n * dt, final_time, rel_tol=1e-9, abs_tol=1e-12):
        raise ConfigError(f"final time {final_time} is not a positive multiple of dt={dt}")
    return int(n)


def _run_final_state(cfg: ExperimentConfig, n_points: int, scheme_name: str, dt: float, n_steps: int):
    from .grid import Grid
    from .integrate.simulation import run_simulation

    length = cfg.grid.n_points * cfg.grid.dx
    model = cfg.build_model(Grid(n_points, length / n_points))
    scheme = cfg.build_scheme(model, scheme_name)
    z0 = cfg.build_initial(model)
    return run_simulation(
        model, scheme, z0, n_steps, cfg.build_step_config(dt), method=cfg.time.method
    )


def run_sweep(
    cfg: ExperimentConfig,
    ns: list[int],
    dts: list[float],
    schemes: list[str],
    final_time: Optional[float] = None,
    on_cell: Optional[Callable[[], None]] = None,
) -> list[dict]:
    """One row per cell with final drift, max ECL residual and global error.

    The global error is max|z(T) - z_ref(T)| against a run at the same N and
    scheme with dt_ref = min(dt) / 8. Failures are recorded in the row.
    """
    cells = sweep_cells(ns, dts, schemes)
    T = final_time if final_time is not None else cfg.time.n_steps * cfg.time.dt
    if not T > 0:
        raise ConfigError(f"final time must be positive, got {T}")
    dt_ref = min(dts) / REFERENCE_REFINEMENT
    n_ref = _steps_for(T, dt_ref)
    keys = sorted({(c.n_points, c.scheme) for c in cells}, key=lambda k: (k[0], k[1]))

    def reference(key):
        n_points, scheme = key
        try:
            return _run_final_state(cfg, n_points, scheme, dt_ref, n_ref).final_state
        except EclkitError as e:
            console.print(f"[yellow]Warning: reference run for N={n_points}, {scheme} failed: {e}[/yellow]")
            return None

    def run_cell(cell: SweepCell) -> dict:
        row = {
            "n_points": cell.n_points,
            "dt": cell.dt,
            "scheme": cell.scheme,
            "final_time": T,
        }
        try:
            n_steps = _steps_for(T, cell.dt)
            row["n_steps"] = n_steps
            traj = _run_final_state(cfg, cell.n_points, cell.scheme, cell.dt, n_steps)
        except (EclkitError, ValueError) as e:
            row.update(status="failed", error=str(e))
        else:
            row.update(
                status="ok",
                error="",
                energy_drift=traj.energy_drift(),
                relative_energy_drift=traj.relative_energy_drift(),
                max_ecl_residual=traj.max_ecl_residual(),
                _final=traj.final_state,
            )
        if on_cell is not None:
            on_cell()
        return row

    with ThreadPoolExecutor(max_workers=sweep_threads()) as pool:
        refs = dict(zip(keys, pool.map(reference, keys)))
        rows = list(pool.map(run_cell, cells))

    for row in rows:
        final = row.pop("_final", None)
        ref = refs.get((row["n_points"], row["scheme"]))
        if final is not None and ref is not None:
            row["global_error"] = float(np.max(np.abs(final.values - ref.values)))
    return rows


def convergence_slopes(rows: list[dict]) -> dict[tuple[int, str], float]:
    """Least-squares slope of log(global_error) against log(dt) per (N, scheme)."""
    groups: dict[tuple[int, str], list[tuple[float, float]]] = {}
    for row in rows:
        try:
            dt = float(row["dt"])
            err = float(row["global_error"])
            key = (int(row["n_points"]), str(row["scheme"]))
        except (KeyError, TypeError, ValueError):
            continue
        if dt > 0 and err > 0 and math.isfinite(err):
            groups.setdefault(key, []).append((dt, err))

    slopes = {}
    for key, points in groups.items():
        if len({dt for dt, _ in points}) < 2:
            continue
        x = np.log([dt for dt, _ in points])
        y = np.log([err for _, err in points])
        slopes[key] = float(np.polyfit(x, y, 1)[0])
    return slopes
