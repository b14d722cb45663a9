"""Energy densities H(z, z_x, z_xx) and the potentials used by built-in models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..dgrad.base import PointFunction
from ..dgrad.checks import check_gradient

Slot = Optional[np.ndarray]
DensityFn = Callable[[np.ndarray, Slot, Slot], np.ndarray]


@dataclass(frozen=True)
class Potential:
    """A scalar potential V(q) with derivatives."""

    name: str
    V: Callable[[np.ndarray], np.ndarray]
    dV: Callable[[np.ndarray], np.ndarray]
    d2V: Callable[[np.ndarray], np.ndarray]
    poly_degree: Optional[int]

    def scaled(self, mass: float) -> Potential:
        """The potential m·V(q)."""
        if mass == 1.0:
            return self
        return Potential(
            name=self.name,
            V=lambda q: mass * self.V(q),
            dV=lambda q: mass * self.dV(q),
            d2V=lambda q: mass * self.d2V(q),
            poly_degree=self.poly_degree if mass != 0.0 else 0,
        )


HARMONIC = Potential(
    name="harmonic",
    V=lambda q: 0.5 * q**2,
    dV=lambda q: q,
    d2V=lambda q: np.ones_like(q),
    poly_degree=2,
)

QUARTIC = Potential(
    name="quartic",
    V=lambda q: 0.25 * q**4,
    dV=lambda q: q**3,
    d2V=lambda q: 3.0 * q**2,
    poly_degree=4,
)

PENDULUM = Potential(
    name="pendulum",
    V=lambda q: 1.0 - np.cos(q),
    dV=np.sin,
    d2V=np.cos,
    poly_degree=None,
)

NO_POTENTIAL = Potential(
    name="none",
    V=lambda q: np.zeros_like(q),
    dV=lambda q: np.zeros_like(q),
    d2V=lambda q: np.zeros_like(q),
    poly_degree=0,
)

_POTENTIALS: dict[str, Potential] = {
    "harmonic": HARMONIC,
    "quartic": QUARTIC,
    "pendulum": PENDULUM,
}

VALID_POTENTIALS = tuple(_POTENTIALS)


def get_potential(name: str, allow_none: bool = False) -> Potential:
    """Look up a potential by name. Raises ValueError if not found."""
    if allow_none and name == "none":
        return NO_POTENTIAL
    potential = _POTENTIALS.get(name)
    if potential is None:
        valid = ", ".join(sorted(_POTENTIALS) + (["none"] if allow_none else []))
        raise ValueError(f"Unknown potential '{name}'. Valid potentials: {valid}")
    return potential


def _max_degree(*degrees: Optional[int]) -> Optional[int]:
    if any(d is None for d in degrees):
        return None
    return max(degrees)


@dataclass(frozen=True)
class DensitySpec:
    """Energy density H(z, w, v) with w standing for z_x and v for z_xx.

    Every callable takes component-major arrays of shape (n,) or (n, K) and
    returns shape () / (K,) for ``energy`` and (n,) / (n, K) for the partials.
    ``hessian`` is optional and acts on the stacked jet y = (z, w[, v]).
    """

    n_components: int
    order: int
    energy: DensityFn
    grad_z: DensityFn
    grad_w: Optional[DensityFn] = None
    grad_v: Optional[DensityFn] = None
    poly_degree: Optional[int] = None
    hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "H"

    def __post_init__(self):
        if self.n_components < 1:
            raise ValueError(f"density needs at least one component, got {self.n_components}")
        if self.order not in (0, 1, 2):
            raise ValueError(
                f"density order must be 0, 1 or 2 (jets truncated at z_xx), got {self.order}"
            )
        if self.order >= 1 and self.grad_w is None:
            raise ValueError(f"density '{self.name}' of order {self.order} needs grad_w")
        if self.order == 2 and self.grad_v is None:
            raise ValueError(f"density '{self.name}' of order 2 needs grad_v")

    @property
    def jet_dimension(self) -> int:
        return self.n_components * (self.order + 1)

    def split(self, y: np.ndarray) -> tuple[np.ndarray, Slot, Slot]:
        """Split a stacked jet into (z, w, v); absent slots are None."""
        n = self.n_components
        z = y[:n]
        w = y[n : 2 * n] if self.order >= 1 else None
        v = y[2 * n : 3 * n] if self.order == 2 else None
        return z, w, v

    def gradient(self, y: np.ndarray) -> np.ndarray:
        z, w, v = self.split(y)
        parts = [np.asarray(self.grad_z(z, w, v), dtype=float)]
        if self.order >= 1:
            parts.append(np.asarray(self.grad_w(z, w, v), dtype=float))
        if self.order == 2:
            parts.append(np.asarray(self.grad_v(z, w, v), dtype=float))
        return np.concatenate(parts, axis=0)

    def point_function(self) -> PointFunction:
        """H as a function of the stacked jet, for the discrete gradient schemes."""
        return PointFunction(
            dimension=self.jet_dimension,
            eval=lambda y: self.energy(*self.split(y)),
            grad=self.gradient,
            poly_degree=self.poly_degree,
            hessian=self.hessian,
            name=self.name,
        )


def check_density(density: DensitySpec, rng: np.random.Generator, samples: int = 8) -> float:
    """Largest relative mismatch of the partials against finite differences."""
    return check_gradient(density.point_function(), rng, samples=samples)


# ---------------------------------------------------------------------------
# Built-in densities
# ---------------------------------------------------------------------------


def wave_density(potential: Potential) -> DensitySpec:
    """H = ½p² + ½q_x² + V(q) for z = (q, p)."""

    def energy(z, w, v):
        return 0.5 * z[1] ** 2 + 0.5 * w[0] ** 2 + potential.V(z[0])

    def grad_z(z, w, v):
        return np.stack([potential.dV(z[0]), z[1]])

    def grad_w(z, w, v):
        return np.stack([w[0], np.zeros_like(w[1])])

    def hessian(y):
        out = np.zeros((4, 4) + y.shape[1:])
        out[0, 0] = potential.d2V(y[0])
        out[1, 1] = 1.0
        out[2, 2] = 1.0
        return out

    return DensitySpec(
        n_components=2,
        order=1,
        energy=energy,
        grad_z=grad_z,
        grad_w=grad_w,
        poly_degree=_max_degree(2, potential.poly_degree),
        hessian=hessian,
        name=f"wave[{potential.name}]",
    )


def kdv_density(alpha: float = 1.0, beta: float = 1.0) -> DensitySpec:
    """H = αz³ + ½βz_x²."""

    def energy(z, w, v):
        return alpha * z[0] ** 3 + 0.5 * beta * w[0] ** 2

    def grad_z(z, w, v):
        return 3.0 * alpha * z**2

    def grad_w(z, w, v):
        return beta * w

    def hessian(y):
        out = np.zeros((2, 2) + y.shape[1:])
        out[0, 0] = 6.0 * alpha * y[0]
        out[1, 1] = beta
        return out

    return DensitySpec(
        n_components=1,
        order=1,
        energy=energy,
        grad_z=grad_z,
        grad_w=grad_w,
        poly_degree=3 if alpha != 0 else 2,
        hessian=hessian,
        name="kdv",
    )


def multi_hamiltonian_density(S: PointFunction, L: np.ndarray) -> DensitySpec:
    """H = S(z) - ½ zᵀ L z_x for a constant antisymmetric L."""
    L = np.asarray(L, dtype=float)
    n = L.shape[0]

    def energy(z, w, v):
        return S.eval(z) - 0.5 * np.einsum("k...,kl,l...->...", z, L, w)

    def grad_z(z, w, v):
        return np.asarray(S.grad(z)) - 0.5 * np.einsum("kl,l...->k...", L, w)

    def grad_w(z, w, v):
        return 0.5 * np.einsum("kl,l...->k...", L, z)

    hessian = None
    if S.hessian is not None:

        def hessian(y):
            z = y[:n]
            hs = np.asarray(S.hessian(z))
            out = np.zeros((2 * n, 2 * n) + y.shape[1:])
            out[:n, :n] = hs
            block = L.reshape(L.shape + (1,) * (y.ndim - 1))
            out[:n, n:] = -0.5 * block
            out[n:, :n] = 0.5 * block
            return out

    return DensitySpec(
        n_components=n,
        order=1,
        energy=energy,
        grad_z=grad_z,
        grad_w=grad_w,
        poly_degree=_max_degree(2, S.poly_degree),
        hessian=hessian,
        name=f"multi-hamiltonian[{S.name}]",
    )


def multisym_potential(potential: Potential) -> PointFunction:
    """S(u, v, φ) = ½v² - ½φ² + V(u)."""

    def hessian(z):
        out = np.zeros((3, 3) + z.shape[1:])
        out[0, 0] = potential.d2V(z[0])
        out[1, 1] = 1.0
        out[2, 2] = -1.0
        return out

    return PointFunction(
        dimension=3,
        eval=lambda z: 0.5 * z[1] ** 2 - 0.5 * z[2] ** 2 + potential.V(z[0]),
        grad=lambda z: np.stack([potential.dV(z[0]), z[1], -z[2]]),
        poly_degree=_max_degree(2, potential.poly_degree),
        hessian=hessian,
        name=f"S[{potential.name}]",
    )


def chain_density(bond: str, fpu_beta: float, on_site: Potential) -> DensitySpec:
    """H = ½p² + W(q_x) + V(q) with W = ½w² (+ β/4 w⁴ for the FPU bond)."""
    if bond not in ("harmonic", "fpu"):
        raise ValueError(f"Unknown bond '{bond}'. Valid bonds: fpu, harmonic")
    quartic = fpu_beta if bond == "fpu" else 0.0

    def energy(z, w, v):
        s = w[0]
        return 0.5 * z[1] ** 2 + 0.5 * s**2 + 0.25 * quartic * s**4 + on_site.V(z[0])

    def grad_z(z, w, v):
        return np.stack([on_site.dV(z[0]), z[1]])

    def grad_w(z, w, v):
        s = w[0]
        return np.stack([s + quartic * s**3, np.zeros_like(w[1])])

    def hessian(y):
        out = np.zeros((4, 4) + y.shape[1:])
        out[0, 0] = on_site.d2V(y[0])
        out[1, 1] = 1.0
        out[2, 2] = 1.0 + 3.0 * quartic * y[2] ** 2
        return out

    bond_degree = 4 if quartic != 0.0 else 2
    return DensitySpec(
        n_components=2,
        order=1,
        energy=energy,
        grad_z=grad_z,
        grad_w=grad_w,
        poly_degree=_max_degree(bond_degree, on_site.poly_degree),
        hessian=hessian,
        name=f"chain[{bond},{on_site.name}]",
    )
