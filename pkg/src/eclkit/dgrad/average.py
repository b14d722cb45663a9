"""Average Value discrete gradient by Gauss-Legendre quadrature."""

from __future__ import annotations

import math
from functools import cached_property
from typing import Optional

import numpy as np

from .base import DiscreteGradientScheme, PointFunction


class AverageValue(DiscreteGradientScheme):
    """∫₀¹ ∇H(ξ z1 + (1 - ξ) z0) dξ with ``nodes`` Gauss-Legendre points.

    Exact (and so axiom-exact) whenever poly_degree <= 2 * nodes.
    """

    def __init__(self, nodes: int = 2):
        if nodes < 1:
            raise ValueError(f"AverageValue needs at least one quadrature node, got {nodes}")
        self.nodes = int(nodes)

    @classmethod
    def for_degree(cls, poly_degree: Optional[int]) -> AverageValue:
        """Smallest node count recommended for a polynomial of this degree."""
        if poly_degree is None:
            raise ValueError("AverageValue.for_degree needs a known polynomial degree")
        return cls(max(1, math.ceil((poly_degree + 1) / 2)))

    @property
    def kind(self) -> str:
        return "AverageValue"

    @property
    def name(self) -> str:
        return "average"

    @cached_property
    def _rule(self) -> tuple[np.ndarray, np.ndarray]:
        x, w = np.polynomial.legendre.leggauss(self.nodes)
        return (x + 1.0) / 2.0, w / 2.0

    def exact_for(self, poly_degree: Optional[int]) -> bool:
        return poly_degree is not None and poly_degree <= 2 * self.nodes

    def _gradient(self, H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        xi, w = self._rule
        delta = z1 - z0
        acc = np.zeros_like(z0)
        for xk, wk in zip(xi, w):
            acc += wk * H.grad(z0 + xk * delta)
        return acc

    def weighted_hessian(self, H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        """∫₀¹ ξ ∇²H(z0 + ξ(z1 - z0)) dξ, the derivative of the gradient in z1."""
        if H.hessian is None:
            raise ValueError(f"{H.name} provides no Hessian")
        xi, w = self._rule
        delta = z1 - z0
        acc = None
        for xk, wk in zip(xi, w):
            term = (wk * xk) * H.hessian(z0 + xk * delta)
            acc = term if acc is None else acc + term
        return acc

    def describe(self) -> str:
        return f"AverageValue({self.nodes} nodes)"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "quadrature_nodes": self.nodes}
