"""Continuous energy conservation law ingredients evaluated on the grid.

Spatial derivatives use the model's own discretization, so the Euler operator
here coincides with the gradient of the discrete energy used by the
integrator.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatchError
from ..grid import GridFunction, backward_diff, centered_diff, forward_diff
from .instance import ModelInstance, ModelKind
from .structure import SkewOperatorSpec


def _partials(model: ModelInstance, state: GridFunction):
    """H_z, H_{z_x}, H_{z_xx} at every cell as (n, N) arrays (zeros if absent)."""
    grad = np.asarray(model.density.gradient(model.jets(state)))
    n = model.n_components
    zeros = np.zeros_like(grad[:n])
    hz = grad[:n]
    hw = grad[n : 2 * n] if model.density.order >= 1 else zeros
    hv = grad[2 * n : 3 * n] if model.density.order == 2 else zeros
    return hz, hw, hv


def euler_operator(model: ModelInstance, state: GridFunction) -> GridFunction:
    """E(H) = H_z - ∂_x H_{z_x} + ∂_xx H_{z_xx}.

    For forward-jet kinds ∂_x is the backward difference (the adjoint of the
    jet's forward difference); for PoissonOperator it is D₀ and ∂_xx the
    three-point second difference.
    """
    hz, hw, hv = _partials(model, state)
    grid = model.grid
    if model.uses_forward_jets:
        dhw = backward_diff(GridFunction(grid, hw)).values / grid.dx
        return GridFunction(grid, hz - dhw)
    d0hw = centered_diff(GridFunction(grid, hw)).values
    hv_f = GridFunction(grid, hv)
    lap = (forward_diff(hv_f).values - backward_diff(hv_f).values) / grid.dx**2
    return GridFunction(grid, hz - d0hw + lap)


def bilinear_S(op: SkewOperatorSpec, a: GridFunction, b: GridFunction) -> GridFunction:
    """S(a, b)_i = a_iᵀ K2 b_i."""
    if a.grid != b.grid or a.values.shape != b.values.shape:
        raise ShapeMismatchError(f"fields differ: {a.values.shape} vs {b.values.shape}")
    if a.n_components != op.n:
        raise ShapeMismatchError(f"K2 is {op.n}x{op.n}, fields have {a.n_components} components")
    return GridFunction(a.grid, np.einsum("ki,kl,li->i", a.values, op.K2, b.values))


def potential_S(model: ModelInstance, state: GridFunction) -> GridFunction:
    """The multi-Hamiltonian potential S(z_i) of a DegenerateK model."""
    if model.kind is not ModelKind.DEGENERATE:
        raise ShapeMismatchError(f"potential_S needs a DegenerateK model, got {model.kind.value}")
    state = model.check_state(state)
    return GridFunction(model.grid, model.potential_S.eval(state.values))


def flux_form_A(Q: GridFunction, model: ModelInstance, state: GridFunction) -> GridFunction:
    """A(Q, H) = Q·H_{z_x} + (∂_xQ)·H_{z_xx} - Q·∂_x H_{z_xx}, ∂_x = D₀."""
    if Q.grid != model.grid or Q.n_components != model.n_components:
        raise ShapeMismatchError(
            f"Q has shape {Q.values.shape}, model expects {model.n_components} components"
        )
    _, hw, hv = _partials(model, state)
    total = np.sum(Q.values * hw, axis=0)
    if model.density.order == 2:
        dq = centered_diff(Q).values
        dhv = centered_diff(GridFunction(model.grid, hv)).values
        total = total + np.sum(dq * hv - Q.values * dhv, axis=0)
    return GridFunction(model.grid, total)


def continuous_flux_prop1(model: ModelInstance, state: GridFunction) -> GridFunction:
    """F = -H_{z_x}ᵀ K H_z + H_{z_x}ᵀ K ∂_x H_{z_x} on the lattice realization.

    H_{z_x} is read at the left face i-1, so the semidiscrete flow satisfies
    ḣ_i + (F_{i+1} - F_i)/dx = 0 exactly.
    """
    if model.kind is not ModelKind.CANONICAL:
        raise ShapeMismatchError(
            f"continuous_flux_prop1 needs a CanonicalPDE model, got {model.kind.value}"
        )
    if model.density.order != 1:
        raise ShapeMismatchError("continuous_flux_prop1 needs a density of order 1")
    hz, hw, _ = _partials(model, state)
    K = model.structure.matrix
    hw_left = np.roll(hw, 1, axis=1)
    dhw = (hw - hw_left) / model.grid.dx
    flux = -np.einsum("ki,kl,li->i", hw_left, K, hz) + np.einsum("ki,kl,li->i", hw_left, K, dhw)
    return GridFunction(model.grid, flux)


def continuous_flux_prop2(model: ModelInstance, state: GridFunction) -> GridFunction:
    """F = -½ S(E, E) - A(𝒦E, H) for 𝒦 = K1 + K2 ∂_x; ∂_t H + ∂_x F = 0."""
    if model.kind is not ModelKind.POISSON:
        raise ShapeMismatchError(
            f"continuous_flux_prop2 needs a PoissonOperator model, got {model.kind.value}"
        )
    E = euler_operator(model, state)
    Q = model.state_from_flat(model.structure_operator @ E.flat())
    S = bilinear_S(model.structure, E, E)
    A = flux_form_A(Q, model, state)
    return GridFunction(model.grid, -0.5 * S.scalar() - A.scalar())


def semidiscrete_density_rate(model: ModelInstance, state: GridFunction) -> GridFunction:
    """ḣ_i = ∇H(y_i) · (J ż)_i along the semidiscrete flow ż = 𝒦_d E."""
    zdot = model.rhs_flat(model.check_state(state).flat())
    grad = np.asarray(model.point_function.grad(model.jets(state)))
    ydot = model.jets_flat(zdot)
    return GridFunction(model.grid, np.sum(grad * ydot, axis=0))


def continuous_flux_prop3(
    model: ModelInstance, state: GridFunction, velocity: GridFunction
) -> GridFunction:
    """F_i = -H_{z_x}(z)_{i-1} · ż_i for a DegenerateK model.

    The flow of a singular K only fixes ż through its constraints, so the
    velocity is supplied by the caller.
    """
    if model.kind is not ModelKind.DEGENERATE:
        raise ShapeMismatchError(
            f"continuous_flux_prop3 needs a DegenerateK model, got {model.kind.value}"
        )
    state = model.check_state(state)
    velocity = model.check_state(velocity)
    _, hw, _ = _partials(model, state)
    hw_left = np.roll(hw, 1, axis=1)
    return GridFunction(model.grid, -np.sum(hw_left * velocity.values, axis=0))


def poisson_local_flux(
    model: ModelInstance, E: np.ndarray, a: np.ndarray, b: np.ndarray, zdot: np.ndarray
) -> GridFunction:
    """Backward-shifted local flux of the Poisson realization.

    F_i = -½ E_iᵀ K2 E_{i+1} - ½(a_i·ż_{i+1} + a_{i+1}·ż_i) - (b_i·ż_{i+1} - b_{i+1}·ż_i)/dx
    with a, b the z_x and z_xx slots of the gradient.
    """

    def right(f: np.ndarray) -> np.ndarray:
        return np.roll(f, -1, axis=1)

    K2 = model.structure.K2
    flux = -0.5 * np.einsum("ki,kl,li->i", E, K2, right(E))
    flux -= 0.5 * np.sum(a * right(zdot) + right(a) * zdot, axis=0)
    flux -= np.sum(b * right(zdot) - right(b) * zdot, axis=0) / model.grid.dx
    return GridFunction(model.grid, flux)


def semidiscrete_flux_prop2(model: ModelInstance, state: GridFunction) -> GridFunction:
    """The local Poisson flux along the semidiscrete flow ż = 𝒦_d E at ``state``."""
    if model.kind is not ModelKind.POISSON:
        raise ShapeMismatchError(
            f"semidiscrete_flux_prop2 needs a PoissonOperator model, got {model.kind.value}"
        )
    state = model.check_state(state)
    _, hw, hv = _partials(model, state)
    E = euler_operator(model, state).values
    zdot = model.rhs(state).values
    return poisson_local_flux(model, E, hw, hv, zdot)
