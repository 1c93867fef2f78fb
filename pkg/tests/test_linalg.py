import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from barygeo.errors import ShapeError
from barygeo.linalg import max_norm, nullspace, quad_form, solve_least_squares, sym_eig


def random_symmetric(rng, n):
    A = rng.normal(size=(n, n))
    return A + A.T


class TestSymEig:
    def test_identity(self):
        eig = sym_eig(np.eye(3))
        np.testing.assert_allclose(eig.eigenvalues, [1, 1, 1])
        np.testing.assert_allclose(eig.eigenvectors.T @ eig.eigenvectors, np.eye(3), atol=1e-15)

    def test_diagonal(self):
        eig = sym_eig(np.diag([5.0, -2.0]))
        np.testing.assert_allclose(eig.eigenvalues, [5, -2])
        np.testing.assert_allclose(np.abs(eig.eigenvectors), np.eye(2))

    def test_swap_matrix(self):
        eig = sym_eig([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(eig.eigenvalues, [1, -1], atol=1e-15)
        r = 1 / np.sqrt(2)
        np.testing.assert_allclose(eig.eigenvectors[:, 0], [r, r], atol=1e-15)
        np.testing.assert_allclose(eig.eigenvectors[:, 1], [r, -r], atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 5, 10, 17, 32])
    def test_reconstruction_and_orthonormality(self, n):
        rng = np.random.default_rng(n)
        S = random_symmetric(rng, n)
        vals, V = sym_eig(S)
        assert np.all(np.diff(vals) <= 0)
        recon = (V * vals) @ V.T
        assert max_norm(recon - S) <= 1e-10 * max_norm(S)
        assert max_norm(V.T @ V - np.eye(n)) <= 1e-10
        for k in range(n):
            assert max_norm(S @ V[:, k] - vals[k] * V[:, k]) <= 1e-10 * max_norm(S)

    def test_eigenvalues_match_lapack(self):
        rng = np.random.default_rng(7)
        for n in (3, 8, 20):
            S = random_symmetric(rng, n)
            np.testing.assert_allclose(sym_eig(S).eigenvalues, np.linalg.eigvalsh(S)[::-1], atol=1e-11)

    def test_repeated_and_zero_eigenvalues(self):
        # rank-2 projector plus a zero block
        rng = np.random.default_rng(3)
        Q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
        S = Q @ np.diag([2.0, 2.0, 0, 0, 0, -1.0]) @ Q.T
        np.testing.assert_allclose(sym_eig(S).eigenvalues, [2, 2, 0, 0, 0, -1], atol=1e-13)

    def test_zero_matrix(self):
        vals, V = sym_eig(np.zeros((4, 4)))
        np.testing.assert_array_equal(vals, np.zeros(4))
        np.testing.assert_array_equal(V, np.eye(4))

    def test_rejects_nonsquare(self):
        with pytest.raises(ShapeError):
            sym_eig(np.zeros((2, 3)))

    def test_rejects_asymmetric(self):
        with pytest.raises(ShapeError):
            sym_eig([[0.0, 1.0], [0.0, 0.0]])

    def test_input_untouched(self):
        S = np.array([[2.0, 1.0], [1.0, 2.0]])
        before = S.copy()
        sym_eig(S)
        np.testing.assert_array_equal(S, before)


class TestQuadForm:
    def test_identity(self):
        assert quad_form(np.eye(2), [1, 2], [1, 2]) == 5

    def test_zero(self):
        assert quad_form(np.zeros((3, 3)), [1, 2, 3], [4, 5, 6]) == 0

    def test_swap(self):
        assert quad_form([[0, 1], [1, 0]], [1, 0], [0, 1]) == 1

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            quad_form(np.eye(2), [1, 2, 3], [1, 2])

    @settings(max_examples=50, deadline=None)
    @given(
        arrays(float, (4, 4), elements=st.floats(-100, 100)),
        arrays(float, 4, elements=st.floats(-100, 100)),
        arrays(float, 4, elements=st.floats(-100, 100)),
    )
    def test_symmetric_bilinear(self, A, a, b):
        S = A + A.T
        x, y = quad_form(S, a, b), quad_form(S, b, a)
        assert abs(x - y) <= 1e-9 * max(1.0, abs(x))


class TestNullspace:
    def test_full_rank(self):
        assert nullspace([[2.0, 1.0], [1.0, 3.0]]) == []

    def test_single_row(self):
        (w,) = nullspace([[1.0, 1.0]])
        np.testing.assert_allclose(w, np.array([1, -1]) / np.sqrt(2), atol=1e-15)

    def test_square_configuration(self):
        pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
        A = np.vstack([pts.T, np.ones(4)])
        (w,) = nullspace(A)
        np.testing.assert_allclose(w, [0.5, -0.5, 0.5, -0.5], atol=1e-15)
        # hand check of both defining sums
        assert abs(w.sum()) < 1e-15
        np.testing.assert_allclose(w @ pts, 0, atol=1e-15)

    def test_basis_is_orthonormal_kernel(self):
        rng = np.random.default_rng(11)
        A = rng.normal(size=(3, 2)) @ rng.normal(size=(2, 6))
        basis = nullspace(A)
        assert len(basis) == 4
        W = np.array(basis)
        np.testing.assert_allclose(W @ W.T, np.eye(4), atol=1e-12)
        for w in basis:
            assert max_norm(A @ w) <= 1e-10 * max_norm(A)


class TestLeastSquares:
    def test_identity(self):
        x, res = solve_least_squares(np.eye(3), [1.0, 2.0, 3.0])
        np.testing.assert_allclose(x, [1, 2, 3])
        assert res == pytest.approx(0, abs=1e-15)

    def test_mean_of_observations(self):
        x, res = solve_least_squares([[1.0], [1.0]], [2.0, 4.0])
        assert x[0] == pytest.approx(3.0)
        assert res == pytest.approx(np.sqrt(2))

    def test_minimum_norm_for_rank_deficient(self):
        x, res = solve_least_squares([[1.0, 1.0], [1.0, 1.0]], [2.0, 0.0])
        np.testing.assert_allclose(x, [0.5, 0.5])
        assert res > 0

    def test_row_mismatch(self):
        with pytest.raises(ShapeError):
            solve_least_squares(np.eye(2), [1.0, 2.0, 3.0])
