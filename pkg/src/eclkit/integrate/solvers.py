"""Nonlinear solvers for implicit steps.

Newton's method assembles the sparse Jacobian either analytically or by
coloured forward differences: the residual couples cells at most
``stencil_radius`` apart, so columns whose cells are congruent modulo a
divisor d >= 2r + 1 of N can share one residual evaluation.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp
from rich.console import Console
from scipy.sparse.linalg import splu

from ..errors import SingularJacobian, SolverDiverged
from .config import SolverReport, StepConfig
from .problem import StepProblem

console = Console(stderr=True)

_SQRT_EPS = float(np.sqrt(np.finfo(float).eps))


def colour_count(n_points: int, radius: int) -> Optional[int]:
    """Smallest divisor of N that is >= 2r + 1, or None when there is none."""
    for d in range(2 * radius + 1, n_points + 1):
        if n_points % d == 0:
            return d
    return None


def fd_jacobian(
    problem: StepProblem,
    x: np.ndarray,
    r0: np.ndarray,
    eps: Optional[float] = None,
) -> sp.csr_matrix:
    """Forward-difference Jacobian of ``problem.residual`` at x."""
    model = problem.model
    n, N = model.n_components, model.grid.n_points
    dim = model.dimension
    radius = model.stencil_radius
    h = eps if eps is not None else _SQRT_EPS * (1.0 + float(np.max(np.abs(x))))
    d = colour_count(N, radius)

    rows, cols, vals = [], [], []
    if d is None:
        # no valid colouring: one column at a time, all rows
        all_rows = np.arange(dim)
        for c in range(dim):
            xp = x.copy()
            xp[c] += h
            dr = (problem.residual(xp) - r0) / h
            rows.append(all_rows)
            cols.append(np.full(dim, c))
            vals.append(dr)
    else:
        offsets = np.arange(-radius, radius + 1)
        for k in range(n):
            for colour in range(d):
                cells = np.arange(colour, N, d)
                xp = x.copy()
                xp[k * N + cells] += h
                dr = (problem.residual(xp) - r0) / h
                for cell in cells:
                    nbr = (cell + offsets) % N
                    r_idx = (np.arange(n)[:, None] * N + nbr[None, :]).reshape(-1)
                    rows.append(r_idx)
                    cols.append(np.full(r_idx.size, k * N + cell))
                    vals.append(dr[r_idx])
    return sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()


def _offending_block(problem: StepProblem, jac: sp.csr_matrix) -> str:
    """Name the component row block most likely responsible for singularity."""
    model = problem.model
    N = model.grid.n_points
    row_norms = np.asarray(abs(jac).sum(axis=1)).reshape(-1)
    empty = [k for k in range(model.n_components) if np.any(row_norms[k * N : (k + 1) * N] == 0)]
    if empty:
        return f"component row block(s) {empty} have vanishing rows"
    constraints = model.constraint_components
    if constraints:
        return f"algebraic constraint row block(s) {constraints}"
    return "no single row block identified"


def _solve_linear(problem: StepProblem, jac: sp.csr_matrix, rhs: np.ndarray, report) -> np.ndarray:
    try:
        delta = splu(jac.tocsc()).solve(rhs)
    except RuntimeError as exc:
        raise SingularJacobian(
            f"Newton linear solve failed ({exc}); {_offending_block(problem, jac)}",
            report,
        ) from exc
    if not np.all(np.isfinite(delta)):
        raise SingularJacobian(
            f"Newton update is not finite; {_offending_block(problem, jac)}", report
        )
    return delta


def newton(problem: StepProblem, cfg: StepConfig) -> tuple[np.ndarray, SolverReport]:
    """Solve R(z1) = 0 to ‖R‖∞ <= tol by Newton's method."""
    use_analytic = cfg.jacobian == "analytic" and problem.has_analytic_jacobian
    x = problem.predictor()
    r = problem.residual(x)
    predictor = "z0" if problem.degenerate else "euler"
    if not problem.degenerate:
        r0 = problem.residual(problem.x0)
        if np.max(np.abs(r)) > np.max(np.abs(r0)):
            if cfg.verbose:
                console.print("[yellow]Warning: Euler predictor rejected, starting from z0[/yellow]")
            x, r, predictor = problem.x0.copy(), r0, "z0"

    norm = float(np.max(np.abs(r)))
    iterations = 0
    while norm > cfg.tol and iterations < cfg.max_iter:
        if use_analytic:
            jac = problem.jacobian(x)
        else:
            jac = fd_jacobian(problem, x, r, cfg.fd_eps)
        report = SolverReport(iterations, norm, False, "newton", predictor)
        x = x + _solve_linear(problem, jac, -r, report)
        r = problem.residual(x)
        norm = float(np.max(np.abs(r)))
        iterations += 1
        if not np.isfinite(norm):
            break

    report = SolverReport(iterations, norm, bool(norm <= cfg.tol), "newton", predictor)
    if not report.converged:
        raise SolverDiverged(
            f"Newton did not converge in {iterations} iterations "
            f"(residual {norm:.3e} > tol {cfg.tol:.1e})",
            report,
        )
    return x, report


def fixed_point(problem: StepProblem, cfg: StepConfig) -> tuple[np.ndarray, SolverReport]:
    """Iterate z1 <- z0 + Δt 𝒦_d Ē(z0, z1); contractive only for small Δt."""
    x = problem.predictor()
    r = problem.residual(x)
    norm = float(np.max(np.abs(r)))
    iterations = 0
    while norm > cfg.tol and iterations < cfg.max_iter:
        x = problem.fixed_point_map(x)
        r = problem.residual(x)
        norm = float(np.max(np.abs(r)))
        iterations += 1
        if not np.isfinite(norm):
            break
    report = SolverReport(iterations, norm, bool(norm <= cfg.tol), "fixed_point", "euler")
    if not report.converged:
        raise SolverDiverged(
            f"fixed-point iteration did not converge in {iterations} iterations "
            f"(residual {norm:.3e} > tol {cfg.tol:.1e}); try a smaller dt or solver: newton",
            report,
        )
    return x, report


SolverFn = Callable[[StepProblem, StepConfig], tuple[np.ndarray, SolverReport]]


def get_solver(name: str) -> SolverFn:
    if name == "newton":
        return newton
    elif name == "fixed_point":
        return fixed_point
    raise ValueError(f"Unknown solver '{name}'. Valid solvers: fixed_point, newton")
