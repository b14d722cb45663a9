"""Verifiers for the discrete gradient axiom and consistency."""

from __future__ import annotations

from typing import Union

import numpy as np

from .base import DiscreteGradientScheme, PointFunction

Real = Union[float, np.ndarray]


def axiom_residual(
    H: PointFunction,
    z0: np.ndarray,
    z1: np.ndarray,
    scheme: DiscreteGradientScheme,
) -> Real:
    """|(z1 - z0)ᵀ ∇̄H(z0, z1) - (H(z1) - H(z0))|, per column for batches."""
    z0 = np.asarray(z0, dtype=float)
    z1 = np.asarray(z1, dtype=float)
    g = scheme.gradient(H, z0, z1)
    res = np.abs(np.sum((z1 - z0) * g, axis=0) - (H.eval(z1) - H.eval(z0)))
    return float(res) if np.ndim(res) == 0 else res


def axiom_scale(H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> Real:
    """1 + |H(z0)| + |H(z1)|, the natural scale of the axiom residual."""
    return 1.0 + np.abs(H.eval(z0)) + np.abs(H.eval(z1))


def consistency_residual(
    H: PointFunction, z: np.ndarray, scheme: DiscreteGradientScheme
) -> float:
    """‖∇̄H(z, z) - ∇H(z)‖∞."""
    z = np.asarray(z, dtype=float)
    return float(np.max(np.abs(scheme.gradient(H, z, z) - H.grad(z))))


def check_gradient(
    H: PointFunction,
    rng: np.random.Generator,
    samples: int = 8,
    step: float = 1e-6,
    scale: float = 1.0,
) -> float:
    """Largest relative mismatch between ``grad`` and central differences of ``eval``."""
    worst = 0.0
    for _ in range(samples):
        z = scale * rng.standard_normal(H.dimension)
        g = np.asarray(H.grad(z), dtype=float)
        fd = np.empty(H.dimension)
        for k in range(H.dimension):
            e = np.zeros(H.dimension)
            e[k] = step
            fd[k] = (H.eval(z + e) - H.eval(z - e)) / (2.0 * step)
        err = np.max(np.abs(fd - g)) / (1.0 + np.max(np.abs(g)))
        worst = max(worst, float(err))
    return worst


def padded(H: PointFunction, dimension: int) -> PointFunction:
    """H on the leading coordinates plus ½|y|² on the rest, in R^dimension.

    Lets a low-dimensional density be exercised on points of a fixed larger
    dimension. Returns H unchanged when it is already that large.
    """
    m = H.dimension
    if m >= dimension:
        return H

    def eval_(z):
        return H.eval(z[:m]) + 0.5 * np.sum(z[m:] * z[m:], axis=0)

    def grad(z):
        return np.concatenate([np.asarray(H.grad(z[:m]), dtype=float), z[m:]], axis=0)

    degree = None if H.poly_degree is None else max(H.poly_degree, 2)
    return PointFunction(dimension, eval_, grad, poly_degree=degree, name=f"{H.name}+pad")
