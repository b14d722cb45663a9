"""Flux recovery by partial summation."""

from __future__ import annotations

import numpy as np

from ..errors import NotConservative
from ..grid import GridFunction


def telescope(density_change: GridFunction) -> GridFunction:
    """Zero-mean F with F_i - F_{i-1} = -dx (c_i - mean(c)), backward shift."""
    c = density_change.scalar()
    dx = density_change.grid.dx
    flux = -dx * np.cumsum(c - np.mean(c))
    return GridFunction(density_change.grid, flux - np.mean(flux))


def reconstruct_flux_telescoping(density_change: GridFunction, tol: float = 1e-12) -> GridFunction:
    """Flux F with Δ_t h_i + (F_i - F_{i-1})/dx = 0, anchored to mean zero.

    Raises NotConservative when |Σ c_i| > N tol (1 + max|c_i|): no periodic
    flux can balance a net change.
    """
    c = density_change.scalar()
    n = density_change.grid.n_points
    total = float(np.sum(c))
    limit = n * tol * (1.0 + float(np.max(np.abs(c))))
    if abs(total) > limit:
        raise NotConservative(
            f"density change sums to {total:.3e} over the grid (limit {limit:.1e}); "
            "no conservative flux exists"
        )
    return telescope(density_change)
