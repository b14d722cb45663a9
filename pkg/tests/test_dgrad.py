"""Tests for the discrete gradient schemes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eclkit.dgrad import (
    SCHEMES,
    AverageValue,
    ItohAbe,
    MidpointGonzalez,
    PointFunction,
    axiom_residual,
    check_gradient,
    consistency_residual,
    default_scheme,
    get_scheme,
    list_schemes,
    padded,
)
from eclkit.dgrad.base import QUOTIENT_RADIUS
from eclkit.errors import NonFiniteError, ShapeMismatchError
from eclkit.grid import Grid
from eclkit.models import MODELS, builtin_model


def _quartic_oscillator():
    """H(q, p) = ½p² + ¼q⁴."""

    def hessian(z):
        out = np.zeros((2, 2) + np.shape(z)[1:])
        out[0, 0] = 3.0 * z[0] ** 2
        out[1, 1] = 1.0
        return out

    return PointFunction(
        dimension=2,
        eval=lambda z: 0.5 * z[1] ** 2 + 0.25 * z[0] ** 4,
        grad=lambda z: np.stack([z[0] ** 3, z[1]]),
        poly_degree=4,
        hessian=hessian,
        name="quartic",
    )


def _pendulum():
    """H(q, p) = ½p² + 1 - cos q."""
    return PointFunction(
        dimension=2,
        eval=lambda z: 0.5 * z[1] ** 2 + 1.0 - np.cos(z[0]),
        grad=lambda z: np.stack([np.sin(z[0]), z[1]]),
        name="pendulum",
    )


def _half_norm(m):
    return PointFunction(
        dimension=m,
        eval=lambda z: 0.5 * np.sum(z * z, axis=0),
        grad=lambda z: np.array(z, dtype=float),
        poly_degree=2,
    )


_point = arrays(
    np.float64, 2, elements=st.floats(min_value=-3, max_value=3, allow_nan=False)
)
_point8 = arrays(
    np.float64, 8, elements=st.floats(min_value=-2, max_value=2, allow_nan=False)
)


def _builtin_in_r8(name):
    return padded(builtin_model(name, Grid(8, 0.5)).point_function, 8)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


class TestSchemeRegistry:
    def test_list_schemes(self):
        assert list_schemes() == list(SCHEMES)
        assert SCHEMES == ("average", "gonzalez", "itoh_abe")

    def test_get_scheme_types(self):
        assert isinstance(get_scheme("average"), AverageValue)
        assert isinstance(get_scheme("gonzalez"), MidpointGonzalez)
        assert isinstance(get_scheme("itoh_abe"), ItohAbe)

    def test_get_scheme_nodes(self):
        assert get_scheme("average", 5).nodes == 5

    def test_unknown_scheme_raises(self):
        with pytest.raises(ValueError, match="Unknown discrete gradient scheme"):
            get_scheme("leapfrog")

    def test_default_scheme_polynomial(self):
        scheme = default_scheme(_quartic_oscillator())
        assert isinstance(scheme, AverageValue)
        assert scheme.exact_for(4)

    def test_default_scheme_non_polynomial(self):
        assert isinstance(default_scheme(_pendulum()), MidpointGonzalez)

    def test_average_needs_a_node(self):
        with pytest.raises(ValueError):
            AverageValue(0)

    def test_for_degree_needs_degree(self):
        with pytest.raises(ValueError):
            AverageValue.for_degree(None)

    def test_to_dict(self):
        assert AverageValue(3).to_dict() == {"kind": "AverageValue", "quadrature_nodes": 3}
        assert MidpointGonzalez().to_dict() == {"kind": "MidpointGonzalez"}


# ---------------------------------------------------------------------------
# discrete_gradient
# ---------------------------------------------------------------------------


class TestDiscreteGradient:
    def test_average_value_quartic_example(self):
        H = _quartic_oscillator()
        z0, z1 = np.array([0.0, 1.0]), np.array([2.0, 3.0])
        g = AverageValue(2).gradient(H, z0, z1)
        np.testing.assert_allclose(g, [2.0, 2.0], atol=1e-14)
        assert np.dot(z1 - z0, g) == pytest.approx(H.eval(z1) - H.eval(z0))

    @pytest.mark.parametrize("scheme", [MidpointGonzalez(), ItohAbe()])
    def test_scalar_difference_quotient(self, scheme):
        H = PointFunction(1, eval=lambda z: np.exp(z[0]), grad=lambda z: np.exp(z))
        z0, z1 = np.array([0.3]), np.array([1.1])
        g = scheme.gradient(H, z0, z1)
        assert g[0] == pytest.approx((np.exp(1.1) - np.exp(0.3)) / 0.8, rel=1e-13)

    def test_scalar_cubic_average_value(self):
        H = PointFunction(1, eval=lambda z: z[0] ** 3, grad=lambda z: 3 * z**2, poly_degree=3)
        g = AverageValue(2).gradient(H, np.array([-1.0]), np.array([2.0]))
        assert g[0] == pytest.approx((8.0 + 1.0) / 3.0)

    @pytest.mark.parametrize("scheme", [AverageValue(1), MidpointGonzalez(), ItohAbe()])
    def test_quadratic_gives_midpoint(self, scheme):
        H = _half_norm(3)
        z0, z1 = np.array([1.0, -2.0, 0.5]), np.array([0.0, 4.0, 1.5])
        np.testing.assert_allclose(scheme.gradient(H, z0, z1), (z0 + z1) / 2, atol=1e-14)

    def test_itoh_abe_is_not_symmetric(self):
        H = _pendulum()
        z0, z1 = np.array([0.1, 0.2]), np.array([1.3, -0.7])
        scheme = ItohAbe()
        assert not scheme.is_symmetric
        assert not np.allclose(scheme.gradient(H, z0, z1), scheme.gradient(H, z1, z0))

    def test_gonzalez_is_symmetric(self):
        H = _pendulum()
        z0, z1 = np.array([0.1, 0.2]), np.array([1.3, -0.7])
        scheme = MidpointGonzalez()
        np.testing.assert_allclose(
            scheme.gradient(H, z0, z1), scheme.gradient(H, z1, z0), atol=1e-14
        )

    @pytest.mark.parametrize("scheme", [AverageValue(3), MidpointGonzalez(), ItohAbe()])
    def test_batch_matches_columns(self, scheme):
        rng = np.random.default_rng(7)
        H = _quartic_oscillator()
        z0 = rng.standard_normal((2, 5))
        z1 = rng.standard_normal((2, 5))
        batch = scheme.gradient(H, z0, z1)
        for k in range(5):
            np.testing.assert_allclose(batch[:, k], scheme.gradient(H, z0[:, k], z1[:, k]))

    def test_nan_raises(self):
        with pytest.raises(NonFiniteError):
            MidpointGonzalez().gradient(_pendulum(), np.array([np.nan, 0.0]), np.zeros(2))

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ShapeMismatchError):
            MidpointGonzalez().gradient(_pendulum(), np.zeros(3), np.zeros(3))


# ---------------------------------------------------------------------------
# axiom_residual
# ---------------------------------------------------------------------------


class TestAxiomResidual:
    @settings(max_examples=300, deadline=None)
    @given(_point, _point)
    def test_gonzalez_axiom(self, z0, z1):
        H = _pendulum()
        scale = 1.0 + abs(H.eval(z0)) + abs(H.eval(z1))
        assert axiom_residual(H, z0, z1, MidpointGonzalez()) <= 1e-12 * scale

    @settings(max_examples=300, deadline=None)
    @given(_point, _point)
    def test_itoh_abe_axiom(self, z0, z1):
        H = _pendulum()
        scale = 1.0 + abs(H.eval(z0)) + abs(H.eval(z1))
        assert axiom_residual(H, z0, z1, ItohAbe()) <= 1e-12 * scale

    @settings(max_examples=300, deadline=None)
    @given(_point, _point)
    def test_average_value_axiom_with_enough_nodes(self, z0, z1):
        H = _quartic_oscillator()
        scale = 1.0 + abs(H.eval(z0)) + abs(H.eval(z1))
        assert axiom_residual(H, z0, z1, AverageValue.for_degree(4)) <= 1e-12 * scale

    @pytest.mark.parametrize("name", list(MODELS))
    @settings(max_examples=100, deadline=None)
    @given(z0=_point8, z1=_point8)
    def test_builtin_densities_in_r8(self, name, z0, z1):
        H = _builtin_in_r8(name)
        assert H.dimension == 8
        scale = 1.0 + abs(H.eval(z0)) + abs(H.eval(z1))
        schemes = [MidpointGonzalez(), ItohAbe()]
        if H.poly_degree is not None:
            schemes.append(AverageValue.for_degree(H.poly_degree))
        for scheme in schemes:
            assert axiom_residual(H, z0, z1, scheme) <= 1e-12 * scale, scheme.describe()

    def test_under_resolved_average_value_fails_axiom(self):
        H = _quartic_oscillator()
        res = axiom_residual(H, np.array([0.0, 1.0]), np.array([2.0, 3.0]), AverageValue(1))
        assert res > 1e-6

    @pytest.mark.parametrize("scheme", [AverageValue(1), MidpointGonzalez(), ItohAbe()])
    def test_coincident_points(self, scheme):
        z = np.array([0.4, -1.2])
        assert axiom_residual(_pendulum(), z, z, scheme) == 0.0

    def test_batch_returns_array(self):
        rng = np.random.default_rng(1)
        res = axiom_residual(_pendulum(), rng.standard_normal((2, 4)),
                             rng.standard_normal((2, 4)), MidpointGonzalez())
        assert res.shape == (4,)


# ---------------------------------------------------------------------------
# consistency_residual
# ---------------------------------------------------------------------------


class TestConsistency:
    @pytest.mark.parametrize("scheme", [AverageValue(2), MidpointGonzalez(), ItohAbe()])
    def test_coincident_points_give_gradient(self, scheme):
        H = _pendulum()
        z = np.array([0.7, -0.3])
        tol = 1e-12 * (1.0 + np.linalg.norm(H.grad(z)))
        assert consistency_residual(H, z, scheme) <= tol

    @pytest.mark.parametrize("scheme", [AverageValue(1), MidpointGonzalez(), ItohAbe()])
    def test_linear_is_exact(self, scheme):
        c = np.array([2.0, -1.0, 0.5])
        H = PointFunction(3, eval=lambda z: np.dot(c, z), grad=lambda z: c.copy(), poly_degree=1)
        z0, z1 = np.array([1.0, 2.0, 3.0]), np.array([-1.0, 0.0, 4.0])
        np.testing.assert_allclose(scheme.gradient(H, z0, z1), c, atol=1e-14)

    @pytest.mark.parametrize("scheme", [MidpointGonzalez(), ItohAbe()])
    def test_first_order_approach(self, scheme):
        H = _pendulum()
        z0 = np.array([0.5, 0.2])
        direction = np.array([1.0, 0.6])
        errors = []
        for h in (1e-2, 5e-3, 2.5e-3, 1.25e-3):
            g = scheme.gradient(H, z0, z0 + h * direction)
            errors.append(np.max(np.abs(g - H.grad(z0))))
        ratios = [errors[k] / errors[k + 1] for k in range(3)]
        for r in ratios:
            assert 1.8 < r < 2.2

    @pytest.mark.parametrize("scheme", [MidpointGonzalez(), ItohAbe()])
    @pytest.mark.parametrize("h", [1e-6, 1e-7, 1e-8, 1e-9, 1e-10])
    def test_tiny_increments_stay_consistent(self, scheme, h):
        H = _pendulum()
        z0 = np.array([0.5, 0.2])
        g = scheme.gradient(H, z0, z0 + h * np.array([1.0, 0.6]))
        assert np.max(np.abs(g - H.grad(z0))) <= h

    @pytest.mark.parametrize("h", [1e-4, 1e-6, 1e-8, 1e-10])
    def test_gonzalez_tiny_increment_matches_midpoint_gradient(self, h):
        H = PointFunction(
            4,
            eval=lambda z: 1.0 - np.cos(z[0]) + 0.5 * np.sum(z[1:] * z[1:], axis=0),
            grad=lambda z: np.concatenate([np.sin(z[:1]), z[1:]]),
        )
        z0 = np.array([1.0, 0.3, 0.2, 0.0])
        z1 = z0 + h * np.array([1.0, -0.5, 0.25, 0.75])
        g = MidpointGonzalez().gradient(H, z0, z1)
        np.testing.assert_allclose(g, H.grad(0.5 * (z0 + z1)), rtol=0, atol=1e-15 + h**2)

    @pytest.mark.parametrize("scheme", [MidpointGonzalez(), ItohAbe()])
    def test_continuous_across_quotient_radius(self, scheme):
        H = _pendulum()
        z0 = np.array([0.9, -0.4])
        direction = np.array([1.0, 0.0])
        below = scheme.gradient(H, z0, z0 + QUOTIENT_RADIUS * (1 - 1e-12) * direction)
        above = scheme.gradient(H, z0, z0 + QUOTIENT_RADIUS * (1 + 1e-12) * direction)
        np.testing.assert_allclose(below, above, rtol=0, atol=1e-12)


# ---------------------------------------------------------------------------
# Self-checks
# ---------------------------------------------------------------------------


class TestChecks:
    def test_check_gradient_passes(self):
        assert check_gradient(_pendulum(), np.random.default_rng(0)) < 1e-6

    def test_check_gradient_flags_wrong_partials(self):
        wrong = PointFunction(
            2,
            eval=lambda z: 0.5 * z[1] ** 2 + 1.0 - np.cos(z[0]),
            grad=lambda z: np.stack([np.cos(z[0]), z[1]]),
        )
        assert check_gradient(wrong, np.random.default_rng(0)) > 1e-3

    def test_weighted_hessian_is_derivative_in_z1(self):
        H = _quartic_oscillator()
        scheme = AverageValue(3)
        z0, z1 = np.array([0.3, -0.2]), np.array([1.1, 0.9])
        W = scheme.weighted_hessian(H, z0, z1)
        h = 1e-6
        for k in range(2):
            e = np.zeros(2)
            e[k] = h
            fd = (scheme.gradient(H, z0, z1 + e) - scheme.gradient(H, z0, z1 - e)) / (2 * h)
            np.testing.assert_allclose(W[:, k], fd, atol=1e-7)

    def test_weighted_hessian_needs_hessian(self):
        with pytest.raises(ValueError, match="Hessian"):
            AverageValue(2).weighted_hessian(_pendulum(), np.zeros(2), np.ones(2))
