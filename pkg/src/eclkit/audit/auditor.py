"""Per-step ECL audit, choosing the flux that matches the model kind."""

from __future__ import annotations

from ..dgrad.base import DiscreteGradientScheme
from ..grid import GridFunction
from ..models.instance import ModelInstance, ModelKind
from .fluxes import (
    density_change,
    discrete_flux_lattice,
    discrete_flux_prop1,
    discrete_flux_prop3,
)
from .report import BACKWARD, FORWARD, EclReport
from .telescoping import telescope

# Flux used for each model kind
FLUX_KINDS = {
    ModelKind.CANONICAL: "prop1",
    ModelKind.LATTICE: "lattice",
    ModelKind.DEGENERATE: "prop3",
    ModelKind.POISSON: "telescoping",
}


def audit_step(
    model: ModelInstance,
    scheme: DiscreteGradientScheme,
    z0: GridFunction,
    z1: GridFunction,
    dt: float,
) -> EclReport:
    """Fill an EclReport for the pair (z0, z1).

    Large residuals are reported, never raised; only shape and kind
    mismatches raise. PoissonOperator fluxes come from telescoping the
    mean-free part of the density change, so any net energy change shows up
    as a uniform residual.
    """
    if dt == 0:
        raise ValueError("audit_step needs a nonzero dt")
    dc = density_change(model, z0, z1, dt)
    kind = model.kind
    label = FLUX_KINDS[kind]
    if kind is ModelKind.CANONICAL:
        flux = discrete_flux_prop1(model, scheme, z0, z1)
    elif kind is ModelKind.LATTICE:
        flux = discrete_flux_lattice(model, scheme, z0, z1)
    elif kind is ModelKind.DEGENERATE:
        flux = discrete_flux_prop3(model, scheme, z0, z1, dt)
    else:
        return EclReport.build(dc, telescope(dc), BACKWARD, label)
    return EclReport.build(dc, flux, FORWARD, label)
