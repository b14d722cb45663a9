"""Model instances and their realization on a periodic grid.

A state z is an n-component GridFunction. At each cell the density sees the
jet y_i = (z_i, w_i[, v_i]):

  - CanonicalPDE, Lattice, DegenerateK: w_i = (z_{i+1} - z_i) / dx
  - PoissonOperator: w_i = (D₀z)_i, v_i = (z_{i+1} - 2 z_i + z_{i-1}) / dx²

The discrete energy is ℋ_d(z) = dx Σ_i H(y_i). With the sparse jet map J
(y = J z, slot-major rows ``s * N + i``) its scaled gradient is
∇ℋ_d / dx = Jᵀ ∇H(y), and a discrete gradient taken per cell in y gives
Ē = Jᵀ ∇̄H(y0, y1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp

from ..dgrad.base import DiscreteGradientScheme, PointFunction
from ..errors import ShapeMismatchError
from ..grid import (
    Grid,
    GridFunction,
    centered_matrix,
    forward_matrix,
    second_difference_matrix,
)
from .density import DensitySpec
from .structure import SkewMatrix, SkewOperatorSpec

Structure = Union[SkewMatrix, SkewOperatorSpec]


class ModelKind(str, Enum):
    CANONICAL = "CanonicalPDE"
    POISSON = "PoissonOperator"
    DEGENERATE = "DegenerateK"
    LATTICE = "Lattice"


@dataclass(frozen=True)
class JetGradient:
    """Slot-wise discrete gradient of H at every cell, plus Ē = Jᵀ ∇̄H.

    ``g``, ``a`` and ``b`` are the z, z_x and z_xx slots, each of shape (n, N);
    absent slots are zero.
    """

    g: np.ndarray
    a: np.ndarray
    b: np.ndarray
    E: np.ndarray


@dataclass(frozen=True, eq=False)
class ModelInstance:
    """A conservative system wired to a grid. Immutable after construction."""

    name: str
    kind: ModelKind
    density: DensitySpec
    structure: Structure
    grid: Grid
    L: Optional[SkewMatrix] = None
    potential_S: Optional[PointFunction] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        n = self.density.n_components
        if self.structure.n != n:
            raise ShapeMismatchError(
                f"structure acts on {self.structure.n} components, density has {n}"
            )
        if self.kind is ModelKind.POISSON:
            if not isinstance(self.structure, SkewOperatorSpec):
                raise ShapeMismatchError("PoissonOperator models need a SkewOperatorSpec")
        else:
            if not isinstance(self.structure, SkewMatrix):
                raise ShapeMismatchError(f"{self.kind.value} models need a constant SkewMatrix")
            if self.density.order > 1:
                raise ShapeMismatchError(
                    f"{self.kind.value} models need a density of order <= 1, "
                    f"got {self.density.order}"
                )
        if self.structure.is_zero:
            raise ShapeMismatchError("the skew structure must be nonzero")
        if self.kind is ModelKind.DEGENERATE:
            if self.L is None or self.potential_S is None:
                raise ShapeMismatchError(
                    "DegenerateK models need L and the potential S(z) of H = S(z) - ½zᵀLz_x"
                )
            if self.L.n != n or self.potential_S.dimension != n:
                raise ShapeMismatchError("L and S must act on the state components")

    # ------------------------------------------------------------------
    # Shapes
    # ------------------------------------------------------------------

    @property
    def n_components(self) -> int:
        return self.density.n_components

    @property
    def dimension(self) -> int:
        """Length of the flattened state vector, n * N."""
        return self.n_components * self.grid.n_points

    @property
    def uses_forward_jets(self) -> bool:
        return self.kind is not ModelKind.POISSON

    @property
    def stencil_radius(self) -> int:
        """Half-width of the cell coupling of the step residual."""
        if self.density.order == 0:
            jet = 0
        else:
            jet = 1 if self.uses_forward_jets else 2
        return jet + self.structure.radius

    @property
    def constraint_components(self) -> list[int]:
        """Components whose rows of K vanish (algebraic constraints)."""
        if self.kind is not ModelKind.DEGENERATE:
            return []
        K = self.structure.matrix
        return [k for k in range(self.n_components) if not np.any(K[k])]

    def check_state(self, state: GridFunction) -> GridFunction:
        if state.grid != self.grid:
            raise ShapeMismatchError(f"state lives on {state.grid}, model on {self.grid}")
        if state.n_components != self.n_components:
            raise ShapeMismatchError(
                f"model '{self.name}' has {self.n_components} components, "
                f"state has {state.n_components}"
            )
        return state

    def state_from_flat(self, flat: np.ndarray) -> GridFunction:
        return GridFunction.from_flat(self.grid, flat, self.n_components)

    # ------------------------------------------------------------------
    # Grid realization
    # ------------------------------------------------------------------

    @cached_property
    def point_function(self) -> PointFunction:
        return self.density.point_function()

    @cached_property
    def jet_matrix(self) -> sp.csr_matrix:
        """J with y = J z; shape (m N, n N) for jet dimension m."""
        identity_n = sp.identity(self.n_components)
        blocks = [sp.identity(self.dimension)]
        if self.density.order >= 1:
            if self.uses_forward_jets:
                d1 = forward_matrix(self.grid) / self.grid.dx
            else:
                d1 = centered_matrix(self.grid)
            blocks.append(sp.kron(identity_n, d1))
        if self.density.order == 2:
            blocks.append(sp.kron(identity_n, second_difference_matrix(self.grid)))
        return sp.vstack(blocks, format="csr")

    @cached_property
    def structure_operator(self) -> sp.csr_matrix:
        """𝒦_d acting on flattened states."""
        return self.structure.operator(self.grid)

    def jets_flat(self, x: np.ndarray) -> np.ndarray:
        return (self.jet_matrix @ x).reshape(self.density.jet_dimension, self.grid.n_points)

    def jets(self, state: GridFunction) -> np.ndarray:
        """Stacked jets, shape (m, N), one column per cell."""
        return self.jets_flat(self.check_state(state).flat())

    def energy_density(self, state: GridFunction) -> GridFunction:
        """h_i = H(y_i)."""
        return GridFunction(self.grid, self.point_function.eval(self.jets(state)))

    def total_energy(self, state: GridFunction) -> float:
        """ℋ_d(z) = dx Σ_i H(y_i)."""
        return self.grid.dx * float(np.sum(self.energy_density(state).scalar()))

    def variational_derivative_flat(self, x: np.ndarray) -> np.ndarray:
        grad = self.point_function.grad(self.jets_flat(x))
        return self.jet_matrix.T @ np.asarray(grad).reshape(-1)

    def variational_derivative(self, state: GridFunction) -> GridFunction:
        """∇ℋ_d / dx = Jᵀ ∇H(y), the grid Euler operator."""
        return self.state_from_flat(self.variational_derivative_flat(self.check_state(state).flat()))

    def rhs_flat(self, x: np.ndarray) -> np.ndarray:
        if self.kind is ModelKind.DEGENERATE:
            raise ShapeMismatchError(
                "DegenerateK models have no explicit vector field (K may be singular)"
            )
        return self.structure_operator @ self.variational_derivative_flat(x)

    def rhs(self, state: GridFunction) -> GridFunction:
        """Semidiscrete vector field 𝒦_d ∇ℋ_d / dx."""
        return self.state_from_flat(self.rhs_flat(self.check_state(state).flat()))

    def discrete_variational_derivative_flat(
        self, scheme: DiscreteGradientScheme, x0: np.ndarray, x1: np.ndarray
    ) -> np.ndarray:
        g = scheme.gradient(self.point_function, self.jets_flat(x0), self.jets_flat(x1))
        return self.jet_matrix.T @ np.asarray(g).reshape(-1)

    def jet_gradient(
        self, scheme: DiscreteGradientScheme, z0: GridFunction, z1: GridFunction
    ) -> JetGradient:
        """The per-cell discrete gradient split by slot, recomputed deterministically."""
        y0 = self.jets(z0)
        y1 = self.jets(z1)
        g = np.asarray(scheme.gradient(self.point_function, y0, y1))
        n, N = self.n_components, self.grid.n_points
        zeros = np.zeros((n, N))
        slots = [g[s * n : (s + 1) * n] for s in range(self.density.order + 1)]
        E = (self.jet_matrix.T @ g.reshape(-1)).reshape(n, N)
        return JetGradient(
            g=slots[0],
            a=slots[1] if len(slots) > 1 else zeros,
            b=slots[2] if len(slots) > 2 else zeros,
            E=E,
        )

    def describe(self) -> str:
        return f"{self.name} ({self.kind.value}, n={self.n_components}, N={self.grid.n_points})"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind.value,
            "n_components": self.n_components,
            "order": self.density.order,
            "params": dict(self.params),
            "structure": self.structure.to_dict(),
        }
        if self.L is not None:
            out["L"] = self.L.matrix.tolist()
        return out
