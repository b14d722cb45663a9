"""Tests for the periodic grid and the difference calculus."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eclkit.errors import ConfigError, NonFiniteError, ShapeMismatchError
from eclkit.grid import (
    Grid,
    GridFunction,
    backward_diff,
    backward_matrix,
    centered_diff,
    centered_matrix,
    forward_diff,
    forward_matrix,
    periodic_total,
    second_difference_matrix,
    shifted_product_divergence,
)


def _field(values, dx=1.0):
    values = np.asarray(values, dtype=float)
    return GridFunction(Grid(values.shape[-1], dx), values)


_finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def field_pairs(draw):
    n = draw(st.integers(min_value=3, max_value=32))
    a = draw(arrays(np.float64, n, elements=_finite))
    b = draw(arrays(np.float64, n, elements=_finite))
    dx = draw(st.floats(min_value=0.01, max_value=10.0))
    return a, b, dx


# ---------------------------------------------------------------------------
# Grid and GridFunction
# ---------------------------------------------------------------------------


class TestGrid:
    def test_length(self):
        assert Grid(64, 0.2).length == pytest.approx(12.8)

    def test_coordinates(self):
        np.testing.assert_allclose(Grid(4, 0.5).coordinates(), [0.0, 0.5, 1.0, 1.5])

    def test_too_few_points_raises(self):
        with pytest.raises(ValueError, match="n_points"):
            Grid(2, 1.0)

    def test_nonpositive_dx_raises(self):
        with pytest.raises(ValueError, match="dx"):
            Grid(8, 0.0)

    @pytest.mark.parametrize("n_points", [8.0, 0, -4, True, "8"])
    def test_bad_point_count_is_a_config_error(self, n_points):
        with pytest.raises(ConfigError, match="n_points"):
            Grid(n_points, 0.5)

    def test_numpy_integer_point_count(self):
        grid = Grid(np.int64(8), 0.5)
        assert grid.n_points == 8
        assert type(grid.n_points) is int


class TestGridFunction:
    def test_scalar_promoted_to_one_component(self):
        f = _field([1, 2, 3])
        assert f.n_components == 1
        assert f.is_scalar

    def test_values_are_read_only(self):
        f = _field([1, 2, 3])
        with pytest.raises(ValueError):
            f.values[0, 0] = 5.0

    def test_wrong_length_raises(self):
        with pytest.raises(ShapeMismatchError):
            GridFunction(Grid(4, 1.0), np.zeros(5))

    def test_nan_raises(self):
        with pytest.raises(NonFiniteError):
            GridFunction(Grid(3, 1.0), [1.0, np.nan, 2.0])

    def test_flat_round_trip_is_component_major(self):
        grid = Grid(3, 1.0)
        f = GridFunction(grid, [[1, 2, 3], [4, 5, 6]])
        np.testing.assert_array_equal(f.flat(), [1, 2, 3, 4, 5, 6])
        g = GridFunction.from_flat(grid, f.flat(), 2)
        np.testing.assert_array_equal(g.values, f.values)

    def test_scalar_of_vector_field_raises(self):
        f = GridFunction(Grid(3, 1.0), np.zeros((2, 3)))
        with pytest.raises(ShapeMismatchError):
            f.scalar()

    def test_arithmetic_on_different_grids_raises(self):
        with pytest.raises(ShapeMismatchError):
            _field([1, 2, 3]) - _field([1, 2, 3], dx=0.5)


# ---------------------------------------------------------------------------
# Differences
# ---------------------------------------------------------------------------


class TestDifferences:
    def test_forward_diff_wraps(self):
        np.testing.assert_array_equal(forward_diff(_field([1, 4, 9, 16])).scalar(), [3, 5, 7, -15])

    def test_backward_diff_wraps(self):
        np.testing.assert_array_equal(backward_diff(_field([1, 4, 9, 16])).scalar(), [-15, 3, 5, 7])

    def test_centered_diff(self):
        np.testing.assert_array_equal(centered_diff(_field([1, 4, 9, 16])).scalar(), [-6, 4, 6, -4])

    def test_constant_field_has_zero_differences(self):
        f = _field([2.5] * 6)
        for op in (forward_diff, backward_diff, centered_diff):
            np.testing.assert_array_equal(op(f).scalar(), np.zeros(6))

    def test_acts_componentwise(self):
        f = GridFunction(Grid(4, 1.0), [[1, 4, 9, 16], [0, 0, 0, 1]])
        np.testing.assert_array_equal(forward_diff(f).values[1], [0, 0, 1, -1])

    def test_sparse_matrices_match_operations(self):
        rng = np.random.default_rng(3)
        grid = Grid(9, 0.3)
        f = GridFunction(grid, rng.standard_normal(9))
        x = f.scalar()
        np.testing.assert_allclose(forward_matrix(grid) @ x, forward_diff(f).scalar())
        np.testing.assert_allclose(backward_matrix(grid) @ x, backward_diff(f).scalar())
        np.testing.assert_allclose(centered_matrix(grid) @ x, centered_diff(f).scalar())
        lap = (np.roll(x, -1) - 2 * x + np.roll(x, 1)) / grid.dx**2
        np.testing.assert_allclose(second_difference_matrix(grid) @ x, lap)


class TestPeriodicTotal:
    def test_unweighted(self):
        assert periodic_total(_field([1, 2, 3])) == 6.0

    def test_weighted(self):
        assert periodic_total(_field([1, 1, 1, 1], dx=0.5), weighted=True) == 2.0

    def test_difference_sums_to_zero(self):
        rng = np.random.default_rng(0)
        f = _field(rng.standard_normal(17))
        assert abs(periodic_total(forward_diff(f))) < 1e-13


# ---------------------------------------------------------------------------
# Lattice identities
# ---------------------------------------------------------------------------


class TestIdentities:
    @settings(max_examples=200, deadline=None)
    @given(field_pairs())
    def test_shifted_product_rule(self, pair):
        a, b, dx = pair
        lhs, rhs = shifted_product_divergence(_field(a, dx), _field(b, dx))
        scale = (1.0 + np.max(np.abs(a))) * (1.0 + np.max(np.abs(b)))
        np.testing.assert_allclose(lhs.scalar(), rhs.scalar(), rtol=0, atol=1e-13 * scale)

    @settings(max_examples=200, deadline=None)
    @given(field_pairs())
    def test_summation_by_parts(self, pair):
        a, b, dx = pair
        fa, fb = _field(a, dx), _field(b, dx)
        lhs = np.sum(a * forward_diff(fb).scalar())
        rhs = -np.sum(backward_diff(fa).scalar() * b)
        scale = a.size * (1.0 + np.max(np.abs(a))) * (1.0 + np.max(np.abs(b)))
        assert abs(lhs - rhs) <= 1e-13 * scale

    @settings(max_examples=200, deadline=None)
    @given(field_pairs())
    def test_centered_difference_is_skew(self, pair):
        a, b, dx = pair
        fa, fb = _field(a, dx), _field(b, dx)
        lhs = np.sum(a * centered_diff(fb).scalar())
        rhs = -np.sum(centered_diff(fa).scalar() * b)
        scale = a.size * (1.0 + np.max(np.abs(a))) * (1.0 + np.max(np.abs(b))) / dx
        assert abs(lhs - rhs) <= 1e-13 * scale

    def test_product_rule_needs_scalars(self):
        f = GridFunction(Grid(3, 1.0), np.zeros((2, 3)))
        with pytest.raises(ShapeMismatchError):
            shifted_product_divergence(f, f)
