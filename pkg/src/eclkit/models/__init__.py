"""Model catalog.

Built-in models:
  - nonlinear_wave: q_tt = q_xx - V'(q), canonical K
  - sine_gordon: nonlinear_wave with V = 1 - cos q
  - kdv_type: u_t = ∂_x(3αu² - βu_xx), 𝒦 = ∂_x
  - multisym_wave: degenerate K z_t + L z_x = ∇S(z)
  - lattice_wave: Hamiltonian chain with harmonic or FPU bonds
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from typing import Any, Callable, Optional

from ..grid import Grid
from . import builtins
from .calculus import (
    bilinear_S,
    continuous_flux_prop1,
    continuous_flux_prop2,
    continuous_flux_prop3,
    euler_operator,
    flux_form_A,
    potential_S,
    semidiscrete_flux_prop2,
)
from .density import VALID_POTENTIALS, DensitySpec, Potential, check_density, get_potential
from .instance import JetGradient, ModelInstance, ModelKind
from .structure import SkewMatrix, SkewOperatorSpec


@dataclass(frozen=True)
class ModelEntry:
    """A catalog entry: builder plus its parameter table."""

    name: str
    kind: ModelKind
    builder: Callable[..., ModelInstance]
    description: str

    @property
    def defaults(self) -> dict[str, Any]:
        sig = inspect.signature(self.builder)
        return {
            p.name: p.default
            for p in sig.parameters.values()
            if p.default is not inspect.Parameter.empty
        }


MODELS: dict[str, ModelEntry] = {
    "nonlinear_wave": ModelEntry(
        "nonlinear_wave", ModelKind.CANONICAL, builtins.nonlinear_wave,
        "q_tt = q_xx - V'(q)",
    ),
    "sine_gordon": ModelEntry(
        "sine_gordon", ModelKind.CANONICAL, builtins.sine_gordon,
        "q_tt = q_xx - sin q",
    ),
    "kdv_type": ModelEntry(
        "kdv_type", ModelKind.POISSON, builtins.kdv_type,
        "u_t = (3αu² - βu_xx)_x",
    ),
    "multisym_wave": ModelEntry(
        "multisym_wave", ModelKind.DEGENERATE, builtins.multisym_wave,
        "K z_t + L z_x = ∇S(z), singular K",
    ),
    "lattice_wave": ModelEntry(
        "lattice_wave", ModelKind.LATTICE, builtins.lattice_wave,
        "Hamiltonian chain, harmonic or FPU bonds",
    ),
}

_CHOICES = {
    "potential": VALID_POTENTIALS,
    "on_site": ("none",) + VALID_POTENTIALS,
    "bond": ("harmonic", "fpu"),
}

__all__ = [
    "DensitySpec",
    "JetGradient",
    "MODELS",
    "ModelEntry",
    "ModelInstance",
    "ModelKind",
    "Potential",
    "SkewMatrix",
    "SkewOperatorSpec",
    "bilinear_S",
    "builtin_model",
    "check_density",
    "continuous_flux_prop1",
    "continuous_flux_prop2",
    "continuous_flux_prop3",
    "euler_operator",
    "flux_form_A",
    "get_potential",
    "list_models",
    "potential_S",
    "semidiscrete_flux_prop2",
]


def _coerce(model: str, key: str, value: Any, default: Any) -> Any:
    if isinstance(default, str):
        value = str(value)
        choices = _CHOICES.get(key)
        if choices and value not in choices:
            raise ValueError(
                f"Invalid value '{value}' for parameter '{key}' of model '{model}'. "
                f"Valid values: {', '.join(choices)}"
            )
        return value
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(
            f"Parameter '{key}' of model '{model}' must be a number, got {value!r}"
        ) from None


def builtin_model(name: str, grid: Grid, params: Optional[dict] = None) -> ModelInstance:
    """Build a catalog model on ``grid``.

    Raises ValueError for unknown models, unknown parameters or bad values.
    """
    entry = MODELS.get(name)
    if entry is None:
        raise ValueError(
            f"Unknown model '{name}'. Valid models: {', '.join(MODELS)}"
        )
    defaults = entry.defaults
    kwargs = {}
    for key, value in (params or {}).items():
        if key not in defaults:
            raise ValueError(
                f"Unknown parameter '{key}' for model '{name}'. "
                f"Valid parameters: {', '.join(defaults)}"
            )
        kwargs[key] = _coerce(name, key, value, defaults[key])
    return entry.builder(grid, **kwargs)


def list_models() -> list[ModelEntry]:
    return list(MODELS.values())
