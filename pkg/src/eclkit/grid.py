"""Periodic uniform 1-D grids and the discrete difference calculus.

All index arithmetic wraps modulo N. The undivided forward difference
``(Δf)_i = f_{i+1} - f_i`` is the basic operation; division by dx is left to
callers so the lattice identities (telescoping, summation by parts, the
shifted product rule) hold exactly and dx-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError, NonFiniteError, ShapeMismatchError


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with ``n_points`` cells of width ``dx``."""

    n_points: int
    dx: float

    def __post_init__(self):
        n = self.n_points
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise ConfigError(f"Grid needs an integer n_points, got {n!r}")
        if n < 3:
            raise ConfigError(f"Grid needs n_points >= 3, got {n}")
        if not np.isfinite(self.dx) or self.dx <= 0:
            raise ConfigError(f"Grid needs dx > 0, got {self.dx}")
        object.__setattr__(self, "n_points", int(n))

    @property
    def length(self) -> float:
        return self.n_points * self.dx

    def coordinates(self) -> np.ndarray:
        """Cell positions x_i = i * dx."""
        return np.arange(self.n_points) * self.dx


@dataclass(frozen=True, eq=False)
class GridFunction:
    """An n-component field sampled on a periodic grid.

    ``values`` has shape (n_components, n_points) and is stored read-only.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[np.newaxis, :]
        if values.ndim != 2 or values.shape[1] != self.grid.n_points:
            raise ShapeMismatchError(
                f"values of shape {np.shape(self.values)} do not fit a grid "
                f"with {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteError("GridFunction values contain NaN or Inf")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: Grid, n_components: int = 1) -> GridFunction:
        return cls(grid, np.zeros((n_components, grid.n_points)))

    @classmethod
    def from_flat(cls, grid: Grid, flat: np.ndarray, n_components: int) -> GridFunction:
        """Inverse of :meth:`flat` (component-major ordering)."""
        return cls(grid, np.asarray(flat, dtype=float).reshape(n_components, grid.n_points))

    @property
    def n_components(self) -> int:
        return self.values.shape[0]

    @property
    def is_scalar(self) -> bool:
        return self.n_components == 1

    def flat(self) -> np.ndarray:
        """Copy of the values as a vector, index ``k * N + i``."""
        return self.values.reshape(-1).copy()

    def component(self, k: int) -> GridFunction:
        return GridFunction(self.grid, self.values[k])

    def scalar(self) -> np.ndarray:
        """The single row of a scalar field."""
        if not self.is_scalar:
            raise ShapeMismatchError(
                f"expected a scalar field, got {self.n_components} components"
            )
        return self.values[0]

    def with_values(self, values: np.ndarray) -> GridFunction:
        return GridFunction(self.grid, values)

    def __sub__(self, other: GridFunction) -> GridFunction:
        _check_same(self, other)
        return self.with_values(self.values - other.values)

    def __add__(self, other: GridFunction) -> GridFunction:
        _check_same(self, other)
        return self.with_values(self.values + other.values)


def _check_same(a: GridFunction, b: GridFunction) -> None:
    if a.grid != b.grid or a.values.shape != b.values.shape:
        raise ShapeMismatchError(
            f"grid functions differ: {a.values.shape} on {a.grid} vs "
            f"{b.values.shape} on {b.grid}"
        )


# ---------------------------------------------------------------------------
# Difference operations
# ---------------------------------------------------------------------------


def forward_diff(f: GridFunction) -> GridFunction:
    """(Δf)_i = f_{i+1} - f_i, periodic, undivided."""
    return f.with_values(np.roll(f.values, -1, axis=1) - f.values)


def backward_diff(f: GridFunction) -> GridFunction:
    """(Δ⁻f)_i = f_i - f_{i-1}, periodic, undivided.

    Minus the adjoint of :func:`forward_diff`:
    ``sum(a * Δb) == -sum(Δ⁻a * b)``.
    """
    return f.with_values(f.values - np.roll(f.values, 1, axis=1))


def centered_diff(f: GridFunction) -> GridFunction:
    """(D₀f)_i = (f_{i+1} - f_{i-1}) / (2 dx); skew-adjoint on the grid."""
    vals = (np.roll(f.values, -1, axis=1) - np.roll(f.values, 1, axis=1)) / (2.0 * f.grid.dx)
    return f.with_values(vals)


def shifted_product_divergence(
    a: GridFunction, b: GridFunction
) -> tuple[GridFunction, GridFunction]:
    """Both sides of Δ(a_i b_{i-1}) = b_i (Δa)_i + a_i (Δb)_{i-1}.

    Returns ``(lhs, rhs)``; they agree up to roundoff for any scalar a, b.
    """
    _check_same(a, b)
    if not a.is_scalar:
        raise ShapeMismatchError("shifted product rule is stated for scalar fields")
    av, bv = a.scalar(), b.scalar()
    b_prev = np.roll(bv, 1)
    lhs = forward_diff(GridFunction(a.grid, av * b_prev))
    da = np.roll(av, -1) - av
    db_prev = np.roll(np.roll(bv, -1) - bv, 1)
    rhs = GridFunction(a.grid, bv * da + av * db_prev)
    return lhs, rhs


def periodic_total(f: GridFunction, weighted: bool = False) -> float:
    """Σ_i f_i, times dx when ``weighted``."""
    total = float(np.sum(f.scalar()))
    return total * f.grid.dx if weighted else total


# ---------------------------------------------------------------------------
# Sparse operator builders
# ---------------------------------------------------------------------------


def _circulant(n: int, offsets: dict[int, float]) -> sp.csr_matrix:
    """Periodic N x N matrix with ``(M f)_i = sum_k c_k f_{i+k}``."""
    rows, cols, vals = [], [], []
    idx = np.arange(n)
    for k, c in offsets.items():
        rows.append(idx)
        cols.append((idx + k) % n)
        vals.append(np.full(n, c))
    mat = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    )
    return mat.tocsr()


def forward_matrix(grid: Grid) -> sp.csr_matrix:
    return _circulant(grid.n_points, {1: 1.0, 0: -1.0})


def backward_matrix(grid: Grid) -> sp.csr_matrix:
    return _circulant(grid.n_points, {0: 1.0, -1: -1.0})


def centered_matrix(grid: Grid) -> sp.csr_matrix:
    h = 1.0 / (2.0 * grid.dx)
    return _circulant(grid.n_points, {1: h, -1: -h})


def second_difference_matrix(grid: Grid) -> sp.csr_matrix:
    """(f_{i+1} - 2 f_i + f_{i-1}) / dx², symmetric."""
    h = 1.0 / grid.dx**2
    return _circulant(grid.n_points, {1: h, 0: -2.0 * h, -1: h})
