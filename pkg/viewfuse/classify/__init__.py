"""Collaborative representation classifier."""

from __future__ import annotations

from .crc import (
    ClassScores,
    CombinedRep,
    RepresentationTriple,
    SparseDenseClassifier,
    classify,
    combine,
    predict,
)
from .solvers import (
    DenseRep,
    RidgeProjection,
    SparseRep,
    omp_solve,
    precompute_projection,
    ridge_solve,
)

__all__ = [
    "ClassScores",
    "CombinedRep",
    "DenseRep",
    "RepresentationTriple",
    "RidgeProjection",
    "SparseDenseClassifier",
    "SparseRep",
    "classify",
    "combine",
    "omp_solve",
    "precompute_projection",
    "predict",
    "ridge_solve",
]
