"""Closed-form discrete fluxes.

ā, ḡ and b̄ denote the z_x, z and z_xx slots of the per-cell discrete
gradient the integrator used, recomputed from (z0, z1). Forward-shift fluxes
satisfy Δ_t h_i + (F_{i+1} - F_i)/dx = 0, backward-shift ones
Δ_t h_i + (F_i - F_{i-1})/dx = 0, up to the step's solver tolerance.
"""

from __future__ import annotations

import numpy as np

from ..dgrad.base import DiscreteGradientScheme
from ..errors import ShapeMismatchError
from ..grid import GridFunction
from ..models.calculus import poisson_local_flux
from ..models.instance import ModelInstance, ModelKind


def _require(model: ModelInstance, op: str, *kinds: ModelKind) -> None:
    if model.kind not in kinds:
        valid = ", ".join(k.value for k in kinds)
        raise ShapeMismatchError(f"{op} needs a {valid} model, got {model.kind.value}")


def _pair(model: ModelInstance, z0: GridFunction, z1: GridFunction):
    return model.check_state(z0), model.check_state(z1)


def density_change(
    model: ModelInstance, z0: GridFunction, z1: GridFunction, dt: float
) -> GridFunction:
    """(H(y¹_i) - H(y⁰_i)) / Δt with the integrator's jets."""
    z0, z1 = _pair(model, z0, z1)
    h0 = model.energy_density(z0).scalar()
    h1 = model.energy_density(z1).scalar()
    return GridFunction(model.grid, (h1 - h0) / dt)


def _skew_pairing(a: np.ndarray, K: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("ki,kl,li->i", a, K, b)


def discrete_flux_prop1(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    z1: GridFunction,
) -> GridFunction:
    """F_i = -ā_{i-1}ᵀ K ḡ_i + ā_{i-1}ᵀ K (ā_i - ā_{i-1})/dx (forward shift)."""
    _require(model, "discrete_flux_prop1", ModelKind.CANONICAL)
    z0, z1 = _pair(model, z0, z1)
    jg = model.jet_gradient(scheme, z0, z1)
    K = model.structure.matrix
    a_left = np.roll(jg.a, 1, axis=1)
    da = (jg.a - a_left) / model.grid.dx
    flux = -_skew_pairing(a_left, K, jg.g) + _skew_pairing(a_left, K, da)
    return GridFunction(model.grid, flux)


def discrete_flux_lattice(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    z1: GridFunction,
) -> GridFunction:
    """F_i = ā_iᵀ K (Δā)_{i-1}/dx - ā_{i-1}ᵀ K ḡ_i (forward shift).

    The shifted-product form of the chain flux; for densities of Δz alone
    ḡ = 0 and only the first term remains.
    """
    _require(model, "discrete_flux_lattice", ModelKind.LATTICE, ModelKind.CANONICAL)
    z0, z1 = _pair(model, z0, z1)
    jg = model.jet_gradient(scheme, z0, z1)
    K = model.structure.matrix
    a_left = np.roll(jg.a, 1, axis=1)
    da_left = (jg.a - a_left) / model.grid.dx
    flux = _skew_pairing(jg.a, K, da_left) - _skew_pairing(a_left, K, jg.g)
    return GridFunction(model.grid, flux)


def transport_flux(a: GridFunction, zdot: GridFunction) -> GridFunction:
    """F_i = -a_{i-1} · ż_i."""
    if a.grid != zdot.grid or a.values.shape != zdot.values.shape:
        raise ShapeMismatchError(f"fields differ: {a.values.shape} vs {zdot.values.shape}")
    a_left = np.roll(a.values, 1, axis=1)
    return GridFunction(a.grid, -np.sum(a_left * zdot.values, axis=0))


def discrete_flux_prop3(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    z1: GridFunction,
    dt: float,
) -> GridFunction:
    """F_i = -ā_{i-1} · (z1 - z0)_i / Δt (forward shift)."""
    _require(model, "discrete_flux_prop3", ModelKind.DEGENERATE)
    z0, z1 = _pair(model, z0, z1)
    jg = model.jet_gradient(scheme, z0, z1)
    zdot = (z1.values - z0.values) / dt
    return transport_flux(GridFunction(model.grid, jg.a), GridFunction(model.grid, zdot))


def discrete_flux_prop2_local(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    z1: GridFunction,
    dt: float,
) -> GridFunction:
    """Local flux of the Poisson realization (backward shift).

    F_i = -½ Ē_iᵀ K2 Ē_{i+1} - ½(ā_i·ż_{i+1} + ā_{i+1}·ż_i)
          - (b̄_i·ż_{i+1} - b̄_{i+1}·ż_i)/dx,  ż = (z1 - z0)/Δt.
    """
    _require(model, "discrete_flux_prop2_local", ModelKind.POISSON)
    z0, z1 = _pair(model, z0, z1)
    jg = model.jet_gradient(scheme, z0, z1)
    zdot = (z1.values - z0.values) / dt
    return poisson_local_flux(model, jg.E, jg.a, jg.b, zdot)


def locality_defect(reconstructed: GridFunction, local: GridFunction) -> float:
    """max |F_rec - F_loc - mean(F_rec - F_loc)|; zero when they differ by a constant."""
    diff = reconstructed.scalar() - local.scalar()
    return float(np.max(np.abs(diff - np.mean(diff))))
