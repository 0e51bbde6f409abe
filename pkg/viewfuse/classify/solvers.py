"""Dense (ridge) and sparse (orthogonal matching pursuit) representation solvers."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError

# A best correlation at or below this fraction of ||y|| counts as zero.
_ZERO_CORRELATION = 1e-12


def _as_dictionary(X: ArrayLike) -> np.ndarray:
    values = np.asarray(X, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] < 1:
        raise InvalidInputError(f"Dictionary must be a matrix with columns, got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Dictionary contains non-finite entries")
    return values


def _as_query(X: np.ndarray, y: ArrayLike) -> np.ndarray:
    vector = np.asarray(y, dtype=np.float64)
    if vector.shape != (X.shape[0],):
        raise InvalidInputError(
            f"Query has shape {vector.shape}, dictionary has {X.shape[0]} rows"
        )
    if not np.all(np.isfinite(vector)):
        raise InvalidInputError("Query contains non-finite entries")
    return vector


@dataclass(frozen=True)
class DenseRep:
    """Ridge coefficients over every dictionary column."""

    coefficients: np.ndarray


def _check_lambda(lambda_: float) -> None:
    if not lambda_ > 0 or not np.isfinite(lambda_):
        raise InvalidInputError(f"lambda must be a finite value > 0, got {lambda_}")


def ridge_solve(X: ArrayLike, y: ArrayLike, lambda_: float) -> DenseRep:
    """Minimizer of ||y - X a||^2 + lambda ||a||^2 via an SPD solve of the normal equations."""
    _check_lambda(lambda_)
    matrix = _as_dictionary(X)
    vector = _as_query(matrix, y)
    system = matrix.T @ matrix + lambda_ * np.eye(matrix.shape[1])
    return DenseRep(scipy.linalg.solve(system, matrix.T @ vector, assume_a="pos"))


@dataclass(frozen=True)
class RidgeProjection:
    """Cached Cholesky factor of (X^T X + lambda I); ``apply(y)`` equals P y."""

    X: np.ndarray
    lambda_: float
    factor: tuple[np.ndarray, bool]

    def apply(self, y: ArrayLike) -> DenseRep:
        vector = _as_query(self.X, y)
        return DenseRep(scipy.linalg.cho_solve(self.factor, self.X.T @ vector))

    @property
    def matrix(self) -> np.ndarray:
        """The explicit n x rows operator P = (X^T X + lambda I)^-1 X^T."""
        return scipy.linalg.cho_solve(self.factor, self.X.T)


def precompute_projection(
    X: ArrayLike,
    lambda_: float,
    gram: np.ndarray | None = None,
) -> RidgeProjection:
    """Factor the ridge system once so each query costs two triangular solves."""
    _check_lambda(lambda_)
    matrix = _as_dictionary(X)
    g = matrix.T @ matrix if gram is None else gram
    factor = scipy.linalg.cho_factor(g + lambda_ * np.eye(matrix.shape[1]))
    return RidgeProjection(X=matrix, lambda_=lambda_, factor=factor)


@dataclass(frozen=True)
class SparseRep:
    """At most k non-zero coefficients; zero outside ``support`` (selection order)."""

    coefficients: np.ndarray
    support: tuple[int, ...]
    residual_norm: float


def _refit(gram_ss: np.ndarray, rhs: np.ndarray, X_s: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Least squares on the support; falls back to lstsq when the Gram block is singular."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(gram_ss, rhs, assume_a="pos")
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
            pass
    coeffs, *_ = scipy.linalg.lstsq(X_s, y)
    return coeffs


def omp_solve(
    X: ArrayLike,
    y: ArrayLike,
    k: int,
    residual_tol: float = 1e-8,
    gram: np.ndarray | None = None,
) -> SparseRep:
    """Greedy k-sparse representation of ``y`` over unit-norm columns of ``X``.

    Each step adds the unselected column with the largest |X^T r| (lowest index on ties)
    and refits all selected coefficients by least squares. Stops at ``k`` atoms, when
    ||r|| <= ``residual_tol``, or when no column correlates with the residual.
    """
    matrix = _as_dictionary(X)
    vector = _as_query(matrix, y)
    n = matrix.shape[1]
    if k < 1 or k > n:
        raise InvalidInputError(f"Sparsity k={k} must lie in [1, {n}]")
    if residual_tol < 0:
        raise InvalidInputError(f"residual_tol must be >= 0, got {residual_tol}")
    g = matrix.T @ matrix if gram is None else gram
    if np.any(np.diag(g) == 0):
        raise InvalidInputError("Dictionary contains all-zero columns")

    xty = matrix.T @ vector
    floor = _ZERO_CORRELATION * float(np.linalg.norm(vector))
    coefficients = np.zeros(n)
    support: list[int] = []
    selected = np.zeros(n, dtype=bool)
    coeffs = np.zeros(0)
    residual = vector.copy()
    correlation = xty.copy()
    while len(support) < k and np.linalg.norm(residual) > residual_tol:
        scores = np.where(selected, -np.inf, np.abs(correlation))
        best = int(np.argmax(scores))
        if scores[best] <= floor:
            break
        support.append(best)
        selected[best] = True
        idx = np.asarray(support)
        coeffs = _refit(g[np.ix_(idx, idx)], xty[idx], matrix[:, idx], vector)
        residual = vector - matrix[:, idx] @ coeffs
        correlation = xty - g[:, idx] @ coeffs

    if support:
        coefficients[np.asarray(support)] = coeffs
    return SparseRep(
        coefficients=coefficients,
        support=tuple(support),
        residual_norm=float(np.linalg.norm(residual)),
    )
