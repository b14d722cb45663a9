"""Tests for the built-in property suites."""

import numpy as np
import pytest

from eclkit import selfcheck
from eclkit.grid import Grid
from eclkit.models import DensitySpec
from eclkit.selfcheck import (
    SuiteResult,
    check_axiom,
    check_partials,
    check_product_rule,
    check_skewness,
    run_selfcheck,
)


def _wrong_density():
    return DensitySpec(
        n_components=1,
        order=1,
        energy=lambda z, w, v: z[0] ** 2 + 0.5 * w[0] ** 2,
        grad_z=lambda z, w, v: z,
        grad_w=lambda z, w, v: w,
        poly_degree=2,
        name="wrong",
    )


class TestSuites:
    def test_partials_pass_for_catalog(self):
        result = check_partials(Grid(8, 0.5), np.random.default_rng(0))
        assert result.passed, result.detail

    def test_product_rule(self):
        assert check_product_rule(Grid(16, 0.5), np.random.default_rng(0)).passed

    def test_skewness(self):
        assert check_skewness(Grid(16, 0.5), np.random.default_rng(0)).passed

    def test_axiom_in_eight_dimensions(self):
        result = check_axiom(Grid(8, 0.5), np.random.default_rng(0))
        assert result.name == "axiom"
        assert result.passed, result.detail

    def test_corrupted_density_fails_partials(self, monkeypatch):
        monkeypatch.setattr(selfcheck, "builtin_densities", lambda grid: {"wrong": _wrong_density()})
        result = check_partials(Grid(8, 0.5), np.random.default_rng(0))
        assert not result.passed
        assert "wrong" in result.detail


class TestRunSelfcheck:
    @pytest.mark.slow
    def test_all_pass(self):
        results = run_selfcheck()
        assert [r.name for r in results] == ["axiom", "partials", "product-rule", "skewness", "ecl"]
        for r in results:
            assert r.passed, f"{r.name}: {r.detail}"

    def test_crashing_suite_is_a_failure(self, monkeypatch):
        def boom(grid, rng):
            raise RuntimeError("kaput")

        monkeypatch.setattr(
            selfcheck,
            "SUITES",
            [("boom", boom), ("product-rule", check_product_rule)],
        )
        results = run_selfcheck()
        assert results[0] == SuiteResult("boom", False, "raised RuntimeError: kaput")
        assert results[1].passed
