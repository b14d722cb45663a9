"""ECL audit results."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError
from ..grid import GridFunction

FORWARD = "forward"
BACKWARD = "backward"
FLUX_SHIFTS = (FORWARD, BACKWARD)


def flux_divergence(flux: GridFunction, shift: str) -> GridFunction:
    """(F_{i+1} - F_i)/dx for ``forward``, (F_i - F_{i-1})/dx for ``backward``."""
    f = flux.scalar()
    if shift == FORWARD:
        div = np.roll(f, -1) - f
    elif shift == BACKWARD:
        div = f - np.roll(f, 1)
    else:
        raise ValueError(f"Unknown flux shift '{shift}'. Valid shifts: {', '.join(FLUX_SHIFTS)}")
    return GridFunction(flux.grid, div / flux.grid.dx)


def ecl_residual(density_change: GridFunction, flux: GridFunction, shift: str) -> GridFunction:
    """Discrete ECL residual Δ_t h_i + (divergence of F)_i."""
    if density_change.grid != flux.grid:
        raise ShapeMismatchError("density change and flux live on different grids")
    return GridFunction(
        flux.grid, density_change.scalar() + flux_divergence(flux, shift).scalar()
    )


@dataclass(frozen=True)
class EclReport:
    """Density change, flux and residual of one step's energy conservation law."""

    density_change: GridFunction
    flux: GridFunction
    residual: GridFunction
    max_residual: float
    global_drift: float
    flux_shift: str
    flux_kind: str

    @classmethod
    def build(
        cls, density_change: GridFunction, flux: GridFunction, shift: str, kind: str
    ) -> EclReport:
        residual = ecl_residual(density_change, flux, shift)
        grid = flux.grid
        return cls(
            density_change=density_change,
            flux=flux,
            residual=residual,
            max_residual=float(np.max(np.abs(residual.scalar()))),
            global_drift=grid.dx * float(np.sum(density_change.scalar())),
            flux_shift=shift,
            flux_kind=kind,
        )

    def to_dict(self, fields: bool = False) -> dict:
        out = {
            "flux_kind": self.flux_kind,
            "flux_shift": self.flux_shift,
            "max_residual": self.max_residual,
            "global_drift": self.global_drift,
        }
        if fields:
            out["density_change"] = self.density_change.scalar().tolist()
            out["flux"] = self.flux.scalar().tolist()
            out["residual"] = self.residual.scalar().tolist()
        return out
