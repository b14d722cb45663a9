"""Point functions and the discrete gradient scheme interface."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import NonFiniteError, ShapeMismatchError

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PointFunction:
    """A smooth H: R^m -> R with its exact gradient.

    ``eval``, ``grad`` and the optional ``hessian`` accept either a point of
    shape (m,) or a batch of points of shape (m, K), one point per column,
    returning shapes (), (m,), (m, m) or (K,), (m, K), (m, m, K).
    """

    dimension: int
    eval: ArrayFn
    grad: ArrayFn
    poly_degree: Optional[int] = None
    hessian: Optional[ArrayFn] = None
    name: str = "H"

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"PointFunction dimension must be positive, got {self.dimension}")
        if self.poly_degree is not None and self.poly_degree < 0:
            raise ValueError(f"poly_degree must be nonnegative, got {self.poly_degree}")

    def check_point(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if z.shape[0] != self.dimension:
            raise ShapeMismatchError(
                f"{self.name} expects points of dimension {self.dimension}, got shape {z.shape}"
            )
        if not np.all(np.isfinite(z)):
            raise NonFiniteError(f"non-finite argument passed to {self.name}")
        return z


class DiscreteGradientScheme(ABC):
    """Abstract two-point gradient satisfying the discrete gradient axiom."""

    @property
    @abstractmethod
    def kind(self) -> str:
        """Scheme identifier (e.g. 'AverageValue')."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Short config name (e.g. 'average')."""

    @property
    def is_symmetric(self) -> bool:
        """Whether ∇̄H(z0, z1) == ∇̄H(z1, z0)."""
        return True

    @abstractmethod
    def _gradient(self, H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        ...

    def gradient(self, H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        """Return ∇̄H(z0, z1); batches of points are handled column-wise."""
        z0 = H.check_point(z0)
        z1 = H.check_point(z1)
        if z0.shape != z1.shape:
            raise ShapeMismatchError(f"point shapes differ: {z0.shape} vs {z1.shape}")
        return self._gradient(H, z0, z1)

    def describe(self) -> str:
        return self.kind

    def to_dict(self) -> dict:
        return {"kind": self.kind}


def coincidence_threshold(z0: np.ndarray) -> np.ndarray:
    """Distance below which two points are treated as equal: 1e-14 (1 + |z0|)."""
    return 1e-14 * (1.0 + np.sqrt(np.sum(z0 * z0, axis=0)))


# Increments shorter than this are integrated instead of differenced
QUOTIENT_RADIUS = 0.1
SEGMENT_NODES = 8


def _segment_rule() -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(SEGMENT_NODES)
    return (x + 1.0) / 2.0, w / 2.0


_SEGMENT_XI, _SEGMENT_W = _segment_rule()


def segment_gradient_offset(
    H: PointFunction, z0: np.ndarray, delta: np.ndarray, reference: np.ndarray
) -> np.ndarray:
    """∫₀¹ ∇H(z0 + s δ) ds - reference, by Gauss-Legendre quadrature.

    The reference is subtracted node by node, so the result carries
    O(eps |∇H|) roundoff however short δ is.
    """
    acc = np.zeros_like(reference)
    for xk, wk in zip(_SEGMENT_XI, _SEGMENT_W):
        acc += wk * (H.grad(z0 + xk * delta) - reference)
    return acc
