"""Energy conservation law audits of single steps."""

from .auditor import FLUX_KINDS, audit_step
from .fluxes import (
    density_change,
    discrete_flux_lattice,
    discrete_flux_prop1,
    discrete_flux_prop2_local,
    discrete_flux_prop3,
    locality_defect,
    transport_flux,
)
from .report import BACKWARD, FORWARD, EclReport, ecl_residual, flux_divergence
from .telescoping import reconstruct_flux_telescoping, telescope

__all__ = [
    "BACKWARD",
    "FLUX_KINDS",
    "FORWARD",
    "EclReport",
    "audit_step",
    "density_change",
    "discrete_flux_lattice",
    "discrete_flux_prop1",
    "discrete_flux_prop2_local",
    "discrete_flux_prop3",
    "ecl_residual",
    "flux_divergence",
    "locality_defect",
    "reconstruct_flux_telescoping",
    "telescope",
    "transport_flux",
]
