"""Constant skew structures K and 𝒦 = K1 + K2 ∂_x and their grid realizations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..grid import Grid, centered_matrix


def _square(matrix, label: str) -> np.ndarray:
    arr = np.array(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{label} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{label} contains NaN or Inf")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SkewMatrix:
    """An n x n matrix with Kᵀ = -K exactly."""

    matrix: np.ndarray
    label: str = "K"
    rank: int = field(init=False)

    def __post_init__(self):
        arr = _square(self.matrix, self.label)
        if not np.array_equal(arr.T, -arr):
            raise ValueError(f"{self.label} is not antisymmetric (Kᵀ != -K)")
        object.__setattr__(self, "matrix", arr)
        object.__setattr__(self, "rank", int(np.linalg.matrix_rank(arr)))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_singular(self) -> bool:
        return self.rank < self.n

    @property
    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    @property
    def radius(self) -> int:
        return 0

    def rank_label(self) -> str:
        return "singular" if self.is_singular else "full"

    def operator(self, grid: Grid) -> sp.csr_matrix:
        """K acting pointwise on a component-major grid vector."""
        return sp.kron(sp.csr_matrix(self.matrix), sp.identity(grid.n_points), format="csr")

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist(), "rank": self.rank_label()}


@dataclass(frozen=True, eq=False)
class SkewOperatorSpec:
    """𝒦 = K1 + K2 ∂_x with K1 antisymmetric and K2 symmetric.

    On the grid ∂_x is realized by the centred difference D₀, which keeps
    K1 ⊗ I + K2 ⊗ D₀ skew with respect to the grid inner product.
    """

    K1: SkewMatrix
    K2: np.ndarray

    def __post_init__(self):
        k2 = _square(self.K2, "K2")
        if not np.array_equal(k2.T, k2):
            raise ValueError("K2 is not symmetric (K2ᵀ != K2)")
        if k2.shape != self.K1.matrix.shape:
            raise ValueError(
                f"K1 and K2 shapes differ: {self.K1.matrix.shape} vs {k2.shape}"
            )
        object.__setattr__(self, "K2", k2)

    @classmethod
    def derivative(cls, n: int = 1) -> SkewOperatorSpec:
        """𝒦 = ∂_x acting on each of n components."""
        return cls(SkewMatrix(np.zeros((n, n)), label="K1"), np.eye(n))

    @property
    def n(self) -> int:
        return self.K2.shape[0]

    @property
    def is_zero(self) -> bool:
        return self.K1.is_zero and not np.any(self.K2)

    @property
    def radius(self) -> int:
        return 1 if np.any(self.K2) else 0

    def operator(self, grid: Grid) -> sp.csr_matrix:
        identity = sp.identity(grid.n_points)
        k1 = sp.kron(sp.csr_matrix(self.K1.matrix), identity)
        k2 = sp.kron(sp.csr_matrix(self.K2), centered_matrix(grid))
        return (k1 + k2).tocsr()

    def to_dict(self) -> dict:
        return {"K1": self.K1.matrix.tolist(), "K2": self.K2.tolist()}
