"""Sparse-dense collaborative representation classification."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError
from ..features.fusion import FusedDictionary, check_dimensions
from .solvers import DenseRep, SparseRep, omp_solve, precompute_projection


@dataclass(frozen=True)
class CombinedRep:
    """lambda1 * sparse + (1 - lambda1) * dense."""

    coefficients: np.ndarray
    lambda1: float


@dataclass(frozen=True)
class ClassScores:
    """Per-class sums of the combined coefficients (q = B a)."""

    values: np.ndarray


@dataclass(frozen=True)
class RepresentationTriple:
    dense: DenseRep
    sparse: SparseRep
    combined: CombinedRep
    scores: ClassScores


def combine(sparse: SparseRep, dense: DenseRep, lambda1: float) -> CombinedRep:
    """Convex combination of the sparse and dense representations."""
    if not 0.0 <= lambda1 <= 1.0:
        raise InvalidInputError(f"lambda1 must lie in [0, 1], got {lambda1}")
    if sparse.coefficients.shape != dense.coefficients.shape:
        raise InvalidInputError(
            f"Representation lengths differ: {sparse.coefficients.shape} vs "
            f"{dense.coefficients.shape}"
        )
    coefficients = lambda1 * sparse.coefficients + (1.0 - lambda1) * dense.coefficients
    return CombinedRep(coefficients=coefficients, lambda1=lambda1)


def predict(combined: CombinedRep, B: ArrayLike) -> tuple[int, ClassScores]:
    """Label with the largest signed coefficient sum (lowest class index on ties)."""
    indicator = np.asarray(B, dtype=np.float64)
    if indicator.ndim != 2 or indicator.shape[1] != combined.coefficients.shape[0]:
        raise InvalidInputError(
            f"Class matrix shape {indicator.shape} does not match "
            f"{combined.coefficients.shape[0]} coefficients"
        )
    scores = indicator @ combined.coefficients
    return int(np.argmax(scores)), ClassScores(values=scores)


def _normalized(y: ArrayLike) -> np.ndarray:
    vector = np.asarray(y, dtype=np.float64)
    norm = np.linalg.norm(vector)
    return vector / norm if norm > 0 else vector


class SparseDenseClassifier:
    """Classifies test vectors over one fused dictionary.

    The ridge factorization and the Gram matrix are computed once; the instance is
    read-only afterwards, so ``classify`` may be called from several threads.
    """

    def __init__(
        self,
        dictionary: FusedDictionary,
        lambda_: float = 0.01,
        lambda1: float = 0.35,
        sparsity: int = 50,
        residual_tol: float = 1e-8,
    ) -> None:
        if not 0.0 <= lambda1 <= 1.0:
            raise InvalidInputError(f"lambda1 must lie in [0, 1], got {lambda1}")
        if not 1 <= sparsity <= dictionary.size:
            raise InvalidInputError(
                f"Sparsity k={sparsity} must lie in [1, {dictionary.size}]"
            )
        self.dictionary = dictionary
        self.lambda1 = lambda1
        self.sparsity = sparsity
        self.residual_tol = residual_tol
        self._gram = dictionary.X.T @ dictionary.X
        self._projection = precompute_projection(dictionary.X, lambda_, gram=self._gram)

    def represent(self, y: ArrayLike) -> tuple[DenseRep, SparseRep]:
        """Dense and sparse representations of the l2-normalized ``y``."""
        vector = np.asarray(y, dtype=np.float64)
        check_dimensions(self.dictionary, vector)
        vector = _normalized(vector)
        dense = self._projection.apply(vector)
        sparse = omp_solve(
            self.dictionary.X, vector, self.sparsity, self.residual_tol, gram=self._gram
        )
        return dense, sparse

    def label(
        self, dense: DenseRep, sparse: SparseRep, lambda1: float | None = None
    ) -> tuple[int, RepresentationTriple]:
        """Combine precomputed representations and predict; ``lambda1`` overrides the default."""
        combined = combine(sparse, dense, self.lambda1 if lambda1 is None else lambda1)
        label, scores = predict(combined, self.dictionary.B)
        return label, RepresentationTriple(dense, sparse, combined, scores)

    def classify(self, y: ArrayLike) -> tuple[int, RepresentationTriple]:
        dense, sparse = self.represent(y)
        return self.label(dense, sparse)


def classify(
    dictionary: FusedDictionary,
    y: ArrayLike,
    lambda_: float = 0.01,
    lambda1: float = 0.35,
    k: int = 50,
    residual_tol: float = 1e-8,
) -> tuple[int, RepresentationTriple]:
    """Label one test vector: normalize, represent densely and sparsely, combine, predict."""
    return SparseDenseClassifier(dictionary, lambda_, lambda1, k, residual_tol).classify(y)
