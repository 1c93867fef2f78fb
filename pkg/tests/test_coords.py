import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barygeo import (
    BarycentricCoords,
    DisplacementVector,
    Realization,
    configuration_nullspace,
    coords_of_point,
    displacement_between,
    normalize,
)
from barygeo.errors import (
    DegenerateCoordinatesError,
    InvalidCoordinatesError,
    InvalidDisplacementError,
    ShapeError,
    UnrepresentablePointError,
)

import configs

SQUARE = Realization([[0, 0], [1, 0], [1, 1], [0, 1]])
TRIANGLE = Realization([[0, 0], [1, 0], [0, 1]])


class TestNormalize:
    def test_uniform_rescale(self):
        c = normalize(BarycentricCoords([2.0, 2.0], "non_normalized"))
        assert c.kind == "normalized"
        np.testing.assert_allclose(c.weights, [0.5, 0.5])

    def test_already_normalized(self):
        np.testing.assert_array_equal(normalize([3.0, -1.0, -1.0]).weights, [3, -1, -1])

    def test_zero_sum(self):
        with pytest.raises(DegenerateCoordinatesError):
            normalize([1.0, -1.0])

    def test_non_normalized_zero_sum_rejected_on_construction(self):
        with pytest.raises(DegenerateCoordinatesError):
            BarycentricCoords([1.0, -1.0], "non_normalized")

    def test_normalized_must_sum_to_one(self):
        with pytest.raises(InvalidCoordinatesError):
            BarycentricCoords([0.5, 0.6])

    def test_weights_are_read_only(self):
        c = BarycentricCoords([0.5, 0.5])
        with pytest.raises(ValueError):
            c.weights[0] = 1.0


class TestDisplacement:
    def test_same_point(self):
        d = displacement_between([0.2, 0.8], [0.2, 0.8])
        np.testing.assert_array_equal(d.weights, [0, 0])

    def test_vertex_to_centroid(self):
        d = displacement_between([1.0, 0, 0], BarycentricCoords.centroid(3))
        np.testing.assert_allclose(d.weights, [-2 / 3, 1 / 3, 1 / 3])

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            displacement_between([1.0, 0], [1.0, 0, 0])

    def test_sum_zero_required(self):
        with pytest.raises(InvalidDisplacementError):
            DisplacementVector([1.0, 0.0, 0.0])

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 2**32 - 1))
    def test_output_sums_to_zero(self, n, seed):
        rng = np.random.default_rng(seed)
        a, b = configs.sum_one(rng, n, 5.0), configs.sum_one(rng, n, 5.0)
        d = displacement_between(a, b)
        assert abs(d.weights.sum()) <= 1e-13 * max(1.0, np.abs(d.weights).max())


class TestRealization:
    def test_affine_rank(self):
        assert SQUARE.rank == 2
        assert TRIANGLE.rank == 2
        assert Realization([[0, 0], [1, 1], [2, 2]]).rank == 1

    def test_bad_signature(self):
        with pytest.raises(ShapeError):
            Realization([[0, 0]], [1, 2])
        with pytest.raises(ShapeError):
            Realization([[0, 0]], [1])

    def test_pseudo_distance_matrix(self):
        R = Realization([[0, 0], [0, 1], [2, 0]], [1, -1])
        np.testing.assert_array_equal(R.distance_matrix(), [[0, -1, 4], [-1, 0, 3], [4, 3, 0]])


class TestCoordsOfPoint:
    def test_vertex(self):
        for i in range(3):
            np.testing.assert_allclose(coords_of_point(TRIANGLE, TRIANGLE.points[i]).weights, np.eye(3)[i], atol=1e-14)

    def test_centroid(self):
        np.testing.assert_allclose(coords_of_point(TRIANGLE, [1 / 3, 1 / 3]).weights, [1 / 3] * 3, atol=1e-14)

    def test_square_center(self):
        c = coords_of_point(SQUARE, [0.5, 0.5])
        assert abs(c.weights.sum() - 1) < 1e-14
        assert np.abs(c.weights @ SQUARE.points - [0.5, 0.5]).max() <= 1e-10
        # minimum norm among all valid weights is the uniform one
        np.testing.assert_allclose(c.weights, [0.25] * 4, atol=1e-14)

    def test_outside_span(self):
        R = Realization([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
        with pytest.raises(UnrepresentablePointError):
            coords_of_point(R, [0, 0, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            coords_of_point(TRIANGLE, [0, 0, 0])

    @pytest.mark.parametrize("seed", range(20))
    def test_reconstruction(self, seed):
        rng = np.random.default_rng(seed)
        n, m = rng.integers(2, 10), rng.integers(1, 5)
        R = configs.euclidean(rng, n, m)
        y = configs.sum_one(rng, n) @ R.points
        c = coords_of_point(R, y)
        scale = max(1.0, np.abs(R.points).max())
        assert np.abs(c.weights @ R.points - y).max() <= 1e-9 * scale


class TestConfigurationNullspace:
    def test_triangle_is_general_position(self):
        assert configuration_nullspace(TRIANGLE) == []

    def test_square(self):
        (w,) = configuration_nullspace(SQUARE)
        np.testing.assert_allclose(w.weights, [0.5, -0.5, 0.5, -0.5], atol=1e-14)

    def test_repeated_point(self):
        R = Realization([[0, 0], [1, 0], [0, 1], [1, 0]])
        (w,) = configuration_nullspace(R)
        target = np.array([0, 1, 0, -1]) / np.sqrt(2)
        assert abs(abs(w.weights @ target) - 1) < 1e-12

    @pytest.mark.parametrize("seed", range(10))
    def test_adding_kernel_keeps_vector(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(1, 4))
        n = m + 2 + int(rng.integers(0, 4))
        R = configs.euclidean(rng, n, m)
        basis = configuration_nullspace(R)
        assert len(basis) == n - m - 1
        u = DisplacementVector(configs.sum_zero(rng, n))
        for w in basis:
            np.testing.assert_allclose(R.vector(u + w), R.vector(u), atol=1e-12)
