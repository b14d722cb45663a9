"""Built-in conservative systems."""

from __future__ import annotations

import numpy as np

from ..grid import Grid
from .density import (
    chain_density,
    get_potential,
    kdv_density,
    multi_hamiltonian_density,
    multisym_potential,
    wave_density,
)
from .instance import ModelInstance, ModelKind
from .structure import SkewMatrix, SkewOperatorSpec

CANONICAL_K = np.array([[0.0, 1.0], [-1.0, 0.0]])

MULTISYM_K = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
MULTISYM_L = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])


def nonlinear_wave(grid: Grid, potential: str = "quartic", mass: float = 1.0) -> ModelInstance:
    """q_tt = q_xx - V'(q) with z = (q, p), H = ½p² + ½q_x² + V(q)."""
    pot = get_potential(potential).scaled(mass)
    return ModelInstance(
        name="nonlinear_wave",
        kind=ModelKind.CANONICAL,
        density=wave_density(pot),
        structure=SkewMatrix(CANONICAL_K),
        grid=grid,
        params={"potential": potential, "mass": mass},
    )


def sine_gordon(grid: Grid, potential: str = "pendulum", mass: float = 1.0) -> ModelInstance:
    """The nonlinear wave equation with V = 1 - cos q by default."""
    model = nonlinear_wave(grid, potential=potential, mass=mass)
    return ModelInstance(
        name="sine_gordon",
        kind=model.kind,
        density=model.density,
        structure=model.structure,
        grid=grid,
        params=model.params,
    )


def kdv_type(grid: Grid, alpha: float = 1.0, beta: float = 1.0) -> ModelInstance:
    """u_t = ∂_x(3αu² - βu_xx), 𝒦 = ∂_x, H = αu³ + ½βu_x²."""
    return ModelInstance(
        name="kdv_type",
        kind=ModelKind.POISSON,
        density=kdv_density(alpha, beta),
        structure=SkewOperatorSpec.derivative(1),
        grid=grid,
        params={"alpha": alpha, "beta": beta},
    )


def multisym_wave(grid: Grid, potential: str = "pendulum", mass: float = 1.0) -> ModelInstance:
    """K z_t + L z_x = ∇S(z) for z = (u, v, w); w = u_x is an algebraic constraint."""
    S = multisym_potential(get_potential(potential).scaled(mass))
    return ModelInstance(
        name="multisym_wave",
        kind=ModelKind.DEGENERATE,
        density=multi_hamiltonian_density(S, MULTISYM_L),
        structure=SkewMatrix(MULTISYM_K),
        grid=grid,
        L=SkewMatrix(MULTISYM_L, label="L"),
        potential_S=S,
        params={"potential": potential, "mass": mass},
    )


def lattice_wave(
    grid: Grid,
    bond: str = "harmonic",
    fpu_beta: float = 1.0,
    on_site: str = "none",
    mass: float = 1.0,
) -> ModelInstance:
    """Hamiltonian chain H_d = dx Σ_i H(z_i, Δz_i/dx), bond energy W(q_x)."""
    pot = get_potential(on_site, allow_none=True).scaled(mass)
    return ModelInstance(
        name="lattice_wave",
        kind=ModelKind.LATTICE,
        density=chain_density(bond, fpu_beta, pot),
        structure=SkewMatrix(CANONICAL_K),
        grid=grid,
        params={"bond": bond, "fpu_beta": fpu_beta, "on_site": on_site, "mass": mass},
    )
