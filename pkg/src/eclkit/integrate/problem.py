"""Implicit step residuals on flattened states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from ..dgrad.average import AverageValue
from ..dgrad.base import DiscreteGradientScheme
from ..errors import ShapeMismatchError
from ..models.instance import ModelInstance, ModelKind

# Residual families
DISCRETE_GRADIENT = "dg"
MIDPOINT = "midpoint"


@dataclass(frozen=True, eq=False)
class StepProblem:
    """R(z1) = 0 for one step from z0.

    ``dg``:        (z1 - z0)/Δt - 𝒦_d Ē(z0, z1)
    ``dg`` on DegenerateK: K (z1 - z0)/Δt - Ē(z0, z1)
    ``midpoint``:  (z1 - z0)/Δt - 𝒦_d E((z0 + z1)/2)
    """

    model: ModelInstance
    x0: np.ndarray
    dt: float
    scheme: Optional[DiscreteGradientScheme] = None
    method: str = DISCRETE_GRADIENT

    def __post_init__(self):
        if self.method not in (DISCRETE_GRADIENT, MIDPOINT):
            raise ValueError(f"Unknown step residual '{self.method}'")
        if self.method == DISCRETE_GRADIENT and self.scheme is None:
            raise ValueError("discrete gradient steps need a scheme")
        if self.method == MIDPOINT and self.degenerate:
            raise ShapeMismatchError("the implicit midpoint baseline needs an invertible K")
        if self.x0.shape != (self.model.dimension,):
            raise ShapeMismatchError(
                f"state vector of length {self.x0.size}, model expects {self.model.dimension}"
            )

    @property
    def degenerate(self) -> bool:
        return self.model.kind is ModelKind.DEGENERATE

    def residual(self, x1: np.ndarray) -> np.ndarray:
        model = self.model
        increment = (x1 - self.x0) / self.dt
        if self.method == MIDPOINT:
            return increment - model.rhs_flat(0.5 * (self.x0 + x1))
        E = model.discrete_variational_derivative_flat(self.scheme, self.x0, x1)
        if self.degenerate:
            return model.structure_operator @ increment - E
        return increment - model.structure_operator @ E

    def fixed_point_map(self, x1: np.ndarray) -> np.ndarray:
        """z0 + Δt 𝒦_d Ē(z0, z1); the fixed points solve R = 0."""
        if self.degenerate:
            raise ShapeMismatchError("fixed-point iteration cannot solve for a singular K")
        if self.method == MIDPOINT:
            return self.x0 + self.dt * self.model.rhs_flat(0.5 * (self.x0 + x1))
        E = self.model.discrete_variational_derivative_flat(self.scheme, self.x0, x1)
        return self.x0 + self.dt * (self.model.structure_operator @ E)

    def predictor(self) -> np.ndarray:
        """Explicit Euler guess; DegenerateK starts from z0."""
        if self.degenerate:
            return self.x0.copy()
        return self.x0 + self.dt * self.model.rhs_flat(self.x0)

    def reversed(self, x1: np.ndarray) -> StepProblem:
        """The step from z1 back towards z0 with -Δt."""
        return StepProblem(self.model, x1, -self.dt, self.scheme, self.method)

    # ------------------------------------------------------------------
    # Analytic Jacobian
    # ------------------------------------------------------------------

    @property
    def has_analytic_jacobian(self) -> bool:
        if self.model.point_function.hessian is None:
            return False
        return self.method == MIDPOINT or isinstance(self.scheme, AverageValue)

    def jacobian(self, x1: np.ndarray) -> sp.csr_matrix:
        """dR/dz1 from the density Hessian."""
        if not self.has_analytic_jacobian:
            raise ValueError(
                "an analytic Jacobian needs a density Hessian and the AverageValue scheme"
            )
        model = self.model
        H = model.point_function
        if self.method == MIDPOINT:
            blocks = 0.5 * np.asarray(H.hessian(model.jets_flat(0.5 * (self.x0 + x1))))
        else:
            blocks = self.scheme.weighted_hessian(H, model.jets_flat(self.x0), model.jets_flat(x1))
        J = model.jet_matrix
        dE = (J.T @ _block_diagonal(blocks) @ J).tocsr()
        identity = sp.identity(model.dimension, format="csr") / self.dt
        Kd = model.structure_operator
        if self.degenerate:
            return (Kd / self.dt - dE).tocsr()
        return (identity - Kd @ dE).tocsr()


def _block_diagonal(blocks: np.ndarray) -> sp.csr_matrix:
    """Slot-major sparse matrix from per-cell m x m blocks of shape (m, m, N)."""
    m, _, N = blocks.shape
    cells = np.arange(N)
    s, t = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    rows = (s[:, :, None] * N + cells).reshape(-1)
    cols = (t[:, :, None] * N + cells).reshape(-1)
    return sp.coo_matrix((blocks.reshape(-1), (rows, cols)), shape=(m * N, m * N)).tocsr()
