"""Initial-condition catalog.

Supported initial conditions:
  - gaussian_bump: periodic Gaussian in the first component, others zero
  - plane_wave: A cos(2π k x / L) in the first component, others zero
  - from_file: an n x N array stored as .npy or whitespace-separated text
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ConfigError
from .grid import GridFunction, centered_diff
from .models.instance import ModelInstance, ModelKind

# Valid initial-condition names
INITIAL_CONDITIONS = ("gaussian_bump", "plane_wave", "from_file")


def gaussian_bump(
    model: ModelInstance,
    center: Optional[float] = None,
    width: float = 1.0,
    amplitude: float = 1.0,
) -> GridFunction:
    """A exp(-(d/w)²) with d the periodic distance to ``center`` (default L/2)."""
    if width <= 0:
        raise ConfigError(f"gaussian_bump width must be positive, got {width}")
    grid = model.grid
    x = grid.coordinates()
    c = grid.length / 2.0 if center is None else center
    d = (x - c + grid.length / 2.0) % grid.length - grid.length / 2.0
    values = np.zeros((model.n_components, grid.n_points))
    values[0] = amplitude * np.exp(-((d / width) ** 2))
    return consistent_state(model, values)


def plane_wave(model: ModelInstance, mode: int = 1, amplitude: float = 1.0) -> GridFunction:
    """A cos(2π k x / L); mode 0 gives the constant state A."""
    grid = model.grid
    x = grid.coordinates()
    values = np.zeros((model.n_components, grid.n_points))
    values[0] = amplitude * np.cos(2.0 * np.pi * mode * x / grid.length)
    return consistent_state(model, values)


def from_file(model: ModelInstance, path: Path) -> GridFunction:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Initial-condition file not found: {path}")
    if path.suffix == ".npy":
        values = np.load(path)
    else:
        values = np.loadtxt(path, ndmin=2)
    values = np.atleast_2d(np.asarray(values, dtype=float))
    expected = (model.n_components, model.grid.n_points)
    if values.shape != expected:
        raise ConfigError(f"{path} holds an array of shape {values.shape}, expected {expected}")
    return model.check_state(GridFunction(model.grid, values))


def consistent_state(model: ModelInstance, values: np.ndarray) -> GridFunction:
    """Fill algebraic components of a DegenerateK state from their constraint.

    A constraint component c coupled through L to component j is set to
    -L[c, j] D₀ z_j (for multisym_wave: w = D₀u).
    """
    values = np.array(values, dtype=float)
    if model.kind is ModelKind.DEGENERATE:
        L = model.L.matrix
        for c in model.constraint_components:
            partners = [j for j in range(model.n_components) if L[c, j] != 0]
            if not partners:
                continue
            j = partners[0]
            dz = centered_diff(GridFunction(model.grid, values[j])).scalar()
            values[c] = -L[c, j] * dz
    return GridFunction(model.grid, values)


def make_initial(
    model: ModelInstance,
    kind: str,
    center: Optional[float] = None,
    width: float = 1.0,
    amplitude: float = 1.0,
    mode: int = 1,
    path: Optional[Path] = None,
) -> GridFunction:
    """Build the named initial condition for ``model``.

    Raises ValueError if the name is unknown.
    """
    if kind == "gaussian_bump":
        return gaussian_bump(model, center=center, width=width, amplitude=amplitude)
    elif kind == "plane_wave":
        return plane_wave(model, mode=mode, amplitude=amplitude)
    elif kind == "from_file":
        if path is None:
            raise ConfigError("from_file needs a path")
        return from_file(model, path)
    raise ValueError(
        f"Unknown initial condition '{kind}'. Valid initial conditions: "
        f"{', '.join(INITIAL_CONDITIONS)}"
    )
