"""Built-in property suites run by ``eclkit check``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .audit.auditor import audit_step
from .dgrad import (
    AverageValue,
    ItohAbe,
    MidpointGonzalez,
    PointFunction,
    axiom_residual,
    padded,
)
from .dgrad.checks import axiom_scale
from .errors import EclkitError
from .grid import (
    Grid,
    GridFunction,
    backward_diff,
    centered_matrix,
    forward_diff,
    shifted_product_divergence,
)
from .integrate.config import StepConfig
from .integrate.stepper import dg_step
from .models import MODELS, DensitySpec, ModelInstance, builtin_model, check_density
from .initial import gaussian_bump

SEED = 20240611
AXIOM_TOL = 1e-12
AXIOM_DIMENSION = 8
PARTIALS_TOL = 1e-6
STEP_TOL = 1e-12
IDENTITY_TOL = 1e-13


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def builtin_models(grid: Grid) -> dict[str, ModelInstance]:
    """One instance of every catalog model with default parameters."""
    return {name: builtin_model(name, grid) for name in MODELS}


def builtin_densities(grid: Grid) -> dict[str, DensitySpec]:
    return {name: model.density for name, model in builtin_models(grid).items()}


def _axiom_schemes(H: PointFunction) -> list:
    schemes = [MidpointGonzalez(), ItohAbe()]
    if H.poly_degree is not None:
        schemes.append(AverageValue.for_degree(H.poly_degree))
    return schemes


def check_axiom(
    grid: Grid, rng: np.random.Generator, samples: int = 1000, dimension: int = AXIOM_DIMENSION
) -> SuiteResult:
    """Random point pairs in R^dimension for every density and scheme."""
    worst, where = 0.0, ""
    for name, density in builtin_densities(grid).items():
        H = padded(density.point_function(), dimension)
        z0 = rng.standard_normal((H.dimension, samples))
        z1 = z0 + rng.standard_normal((H.dimension, samples))
        for scheme in _axiom_schemes(H):
            rel = np.max(axiom_residual(H, z0, z1, scheme) / axiom_scale(H, z0, z1))
            if rel > worst:
                worst, where = float(rel), f"{name}/{scheme.describe()}"
    return SuiteResult("axiom", worst <= AXIOM_TOL, f"max relative residual {worst:.2e} ({where})")


def check_partials(grid: Grid, rng: np.random.Generator) -> SuiteResult:
    worst, where = 0.0, ""
    for name, density in builtin_densities(grid).items():
        err = check_density(density, rng)
        if err > worst:
            worst, where = err, name
    return SuiteResult("partials", worst <= PARTIALS_TOL, f"max mismatch {worst:.2e} ({where})")


def check_product_rule(grid: Grid, rng: np.random.Generator, trials: int = 1000) -> SuiteResult:
    """Shifted product rule and summation by parts on random scalar fields."""
    worst_rule = worst_sbp = 0.0
    for _ in range(trials):
        a = GridFunction(grid, rng.standard_normal(grid.n_points))
        b = GridFunction(grid, rng.standard_normal(grid.n_points))
        lhs, rhs = shifted_product_divergence(a, b)
        worst_rule = max(worst_rule, float(np.max(np.abs(lhs.values - rhs.values))))
        sbp = np.sum(a.scalar() * forward_diff(b).scalar()) + np.sum(
            backward_diff(a).scalar() * b.scalar()
        )
        worst_sbp = max(worst_sbp, abs(float(sbp)))
    worst = max(worst_rule, worst_sbp)
    return SuiteResult(
        "product-rule",
        worst <= IDENTITY_TOL,
        f"max defect {worst_rule:.2e}, summation by parts {worst_sbp:.2e}",
    )


def check_skewness(grid: Grid, rng: np.random.Generator, trials: int = 1000) -> SuiteResult:
    """aᵀKb = -bᵀKa and zᵀKz = 0 for D₀ and every model's structure operator."""
    operators = {"centered": centered_matrix(grid)}
    operators.update(
        {name: model.structure_operator for name, model in builtin_models(grid).items()}
    )
    worst, where = 0.0, ""
    for name, K in operators.items():
        n = K.shape[0]
        a = rng.standard_normal((n, trials))
        b = rng.standard_normal((n, trials))
        aKb = np.einsum("ij,ij->j", a, K @ b)
        bKa = np.einsum("ij,ij->j", b, K @ a)
        aKa = np.einsum("ij,ij->j", a, K @ a)
        defect = float(np.max(np.maximum(np.abs(aKb + bKa), np.abs(aKa)) / (1.0 + np.abs(aKb))))
        if defect > worst:
            worst, where = defect, name
    return SuiteResult("skewness", worst <= IDENTITY_TOL, f"max defect {worst:.2e} ({where})")


def check_ecl(grid: Grid, rng: np.random.Generator, dt: float = 0.05) -> SuiteResult:
    worst, where = 0.0, ""
    cfg = StepConfig(dt=dt, tol=STEP_TOL)
    for name, model in builtin_models(grid).items():
        scheme = MidpointGonzalez()
        z0 = gaussian_bump(model, width=grid.length / 6.0, amplitude=0.5)
        try:
            z1, _ = dg_step(model, scheme, z0, cfg)
        except EclkitError as e:
            return SuiteResult("ecl", False, f"{name}: {e}")
        report = audit_step(model, scheme, z0, z1, dt)
        jg = model.jet_gradient(scheme, z0, z1)
        scale = 1.0 + np.max(np.abs(jg.g)) + 2.0 * np.max(np.abs(jg.a)) / grid.dx
        rel = report.max_residual / scale
        if rel > worst:
            worst, where = float(rel), name
    return SuiteResult("ecl", worst <= 10 * STEP_TOL, f"max scaled residual {worst:.2e} ({where})")


SUITES: list[tuple[str, Callable[[Grid, np.random.Generator], SuiteResult]]] = [
    ("axiom", check_axiom),
    ("partials", check_partials),
    ("product-rule", check_product_rule),
    ("skewness", check_skewness),
    ("ecl", check_ecl),
]


def run_selfcheck(n_points: int = 16, dx: float = 0.5, seed: int = SEED) -> list[SuiteResult]:
    """Run every suite; exceptions count as failures of that suite."""
    grid = Grid(n_points, dx)
    results = []
    for name, suite in SUITES:
        rng = np.random.default_rng(seed)
        try:
            results.append(suite(grid, rng))
        except Exception as e:  # a crashing suite is a failing suite
            results.append(SuiteResult(name, False, f"raised {type(e).__name__}: {e}"))
    return results
