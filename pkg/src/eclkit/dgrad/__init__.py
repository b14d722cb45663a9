"""Discrete gradient schemes.

Supported schemes:
  - average: Average Value gradient by Gauss-Legendre quadrature
  - gonzalez: midpoint gradient with the Gonzalez correction
  - itoh_abe: coordinate increment quotients
"""

from __future__ import annotations

from typing import Optional

from .average import AverageValue
from .base import DiscreteGradientScheme, PointFunction
from .checks import axiom_residual, check_gradient, consistency_residual, padded
from .gonzalez import MidpointGonzalez
from .itoh_abe import ItohAbe

# Valid scheme names; "auto" picks the default for the density
SCHEMES = ("average", "gonzalez", "itoh_abe")

__all__ = [
    "AverageValue",
    "DiscreteGradientScheme",
    "ItohAbe",
    "MidpointGonzalez",
    "PointFunction",
    "SCHEMES",
    "axiom_residual",
    "check_gradient",
    "consistency_residual",
    "default_scheme",
    "get_scheme",
    "list_schemes",
    "padded",
]


def get_scheme(name: str, nodes: Optional[int] = None) -> DiscreteGradientScheme:
    """Return a scheme instance for the given name.

    Raises ValueError if the scheme is unknown.
    """
    if name == "average":
        return AverageValue(nodes or 2)
    elif name == "gonzalez":
        return MidpointGonzalez()
    elif name == "itoh_abe":
        return ItohAbe()
    else:
        raise ValueError(
            f"Unknown discrete gradient scheme: '{name}'. "
            f"Valid schemes: {', '.join(SCHEMES)}"
        )


def default_scheme(H: PointFunction) -> DiscreteGradientScheme:
    """AverageValue with enough nodes for polynomial H, else MidpointGonzalez."""
    if H.poly_degree is not None:
        return AverageValue.for_degree(H.poly_degree)
    return MidpointGonzalez()


def list_schemes() -> list[str]:
    return list(SCHEMES)
