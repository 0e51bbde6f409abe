"""Tests for the ridge and orthogonal matching pursuit solvers."""

from __future__ import annotations

import numpy as np
import pytest

from viewfuse.classify.solvers import omp_solve, precompute_projection, ridge_solve
from viewfuse.core.errors import InvalidInputError


def _unit_columns(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    X = rng.standard_normal((rows, cols))
    return X / np.linalg.norm(X, axis=0)


def _gauss_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting."""
    a = a.copy()
    b = b.copy()
    n = len(b)
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        a[[col, pivot]] = a[[pivot, col]]
        b[[col, pivot]] = b[[pivot, col]]
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            a[row, col:] -= factor * a[col, col:]
            b[row] -= factor * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


class TestRidge:
    def test_identity(self):
        rep = ridge_solve(np.eye(2), [1.0, 0.0], 0.01)
        np.testing.assert_allclose(rep.coefficients, [1 / 1.01, 0.0], atol=1e-9)
        assert rep.coefficients[0] == pytest.approx(0.990099, abs=1e-6)

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_normal_equations(self, seed: int):
        rng = np.random.default_rng(seed)
        X, y = rng.standard_normal((6, 4)), rng.standard_normal(6)
        expected = _gauss_solve(X.T @ X + 0.01 * np.eye(4), X.T @ y)
        got = ridge_solve(X, y, 0.01).coefficients
        assert np.linalg.norm(got - expected) <= 1e-8 * np.linalg.norm(expected)

    def test_zero_query(self):
        rep = ridge_solve(np.random.default_rng(0).standard_normal((5, 3)), np.zeros(5), 0.1)
        np.testing.assert_array_equal(rep.coefficients, 0.0)

    def test_optimality(self):
        rng = np.random.default_rng(1)
        X, y, lam = rng.standard_normal((8, 5)), rng.standard_normal(8), 0.01

        def objective(a: np.ndarray) -> float:
            return float(np.sum((y - X @ a) ** 2) + lam * np.sum(a**2))

        best = ridge_solve(X, y, lam).coefficients
        for _ in range(20):
            delta = rng.standard_normal(5)
            delta *= 1e-3 / np.linalg.norm(delta)
            assert objective(best) <= objective(best + delta)

    @pytest.mark.parametrize("lam", [0.0, -1.0, float("nan")])
    def test_rejects_non_positive_lambda(self, lam: float):
        with pytest.raises(InvalidInputError):
            ridge_solve(np.eye(2), [1.0, 0.0], lam)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            ridge_solve(np.eye(3), [1.0, 0.0], 0.01)

    def test_non_finite(self):
        with pytest.raises(InvalidInputError):
            ridge_solve(np.eye(2), [np.inf, 0.0], 0.01)


class TestProjection:
    def test_basis_vectors(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((7, 4))
        projection = precompute_projection(X, 0.01)
        for i in range(7):
            e = np.zeros(7)
            e[i] = 1.0
            np.testing.assert_allclose(
                projection.apply(e).coefficients,
                ridge_solve(X, e, 0.01).coefficients,
                rtol=0,
                atol=1e-10,
            )
            np.testing.assert_allclose(
                projection.matrix[:, i], projection.apply(e).coefficients, atol=1e-10
            )

    def test_many_queries(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((12, 6))
        projection = precompute_projection(X, 0.05)
        for _ in range(100):
            y = rng.standard_normal(12)
            np.testing.assert_allclose(
                projection.apply(y).coefficients,
                ridge_solve(X, y, 0.05).coefficients,
                rtol=0,
                atol=1e-10,
            )

    def test_zero_lambda_rejected(self):
        with pytest.raises(InvalidInputError):
            precompute_projection(np.eye(3), 0.0)


class TestOmp:
    def test_one_atom(self):
        rep = omp_solve(np.eye(3), [0.0, 2.0, 0.0], 1)
        assert rep.support == (1,)
        np.testing.assert_allclose(rep.coefficients, [0.0, 2.0, 0.0])
        assert rep.residual_norm == 0.0

    def test_zero_query(self):
        rep = omp_solve(np.eye(3), np.zeros(3), 2)
        assert rep.support == ()
        np.testing.assert_array_equal(rep.coefficients, 0.0)

    def test_diagonal_atom(self):
        X = np.column_stack([[1.0, 0.0], [0.0, 1.0], np.array([1.0, 1.0]) / np.sqrt(2)])
        rep = omp_solve(X, [1.0, 1.0], 1)
        assert rep.support == (2,)
        assert rep.coefficients[2] == pytest.approx(np.sqrt(2), abs=1e-12)
        assert rep.residual_norm == pytest.approx(0.0, abs=1e-12)

    def test_tie_picks_lowest_index(self):
        rep = omp_solve(np.eye(2), [1.0, 1.0], 1)
        assert rep.support == (0,)

    @pytest.mark.parametrize("seed", range(50))
    def test_greedy_invariants(self, seed: int):
        rng = np.random.default_rng(seed)
        X = _unit_columns(rng, 20, 30)
        y = rng.standard_normal(20)
        previous: tuple[int, ...] = ()
        previous_norm = np.linalg.norm(y)
        for k in range(1, 9):
            rep = omp_solve(X, y, k, residual_tol=0.0)
            assert len(rep.support) == k
            assert len(set(rep.support)) == k
            assert rep.support[:-1] == previous
            assert rep.residual_norm <= previous_norm + 1e-12
            residual = y - X @ rep.coefficients
            assert rep.residual_norm == pytest.approx(np.linalg.norm(residual), abs=1e-10)
            assert np.max(np.abs(X[:, list(rep.support)].T @ residual)) <= 1e-8
            assert np.count_nonzero(rep.coefficients) <= k
            previous, previous_norm = rep.support, rep.residual_norm

    def test_orthonormal_recovery(self):
        q, _ = np.linalg.qr(np.random.default_rng(4).standard_normal((10, 10)))
        y = 3.0 * q[:, 2] - 1.0 * q[:, 5]
        rep = omp_solve(q, y, 4)
        assert rep.support == (2, 5)
        expected = np.zeros(10)
        expected[[2, 5]] = [3.0, -1.0]
        np.testing.assert_allclose(rep.coefficients, expected, atol=1e-12)

    def test_gram_is_transparent(self):
        rng = np.random.default_rng(5)
        X = _unit_columns(rng, 15, 12)
        y = rng.standard_normal(15)
        a = omp_solve(X, y, 5)
        b = omp_solve(X, y, 5, gram=X.T @ X)
        assert a.support == b.support
        np.testing.assert_allclose(a.coefficients, b.coefficients, atol=1e-12)

    @pytest.mark.parametrize("k", [0, 4])
    def test_sparsity_out_of_range(self, k: int):
        with pytest.raises(InvalidInputError, match="Sparsity"):
            omp_solve(np.eye(3), [1.0, 0.0, 0.0], k)

    def test_zero_column(self):
        X = np.array([[1.0, 0.0], [0.0, 0.0]])
        with pytest.raises(InvalidInputError, match="all-zero"):
            omp_solve(X, [1.0, 0.0], 1)
