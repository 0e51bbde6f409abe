"""viewfuse: cross-view RGB-D action recognition with sparse-dense collaborative representation."""

from __future__ import annotations

__version__ = "0.1.0"

from .classify import RepresentationTriple, SparseDenseClassifier, classify
from .core import InvalidInputError, PipelineParams
from .features import Modality, fuse, ftp_encode, kmeans_fit, sgd_train

__all__ = [
    "InvalidInputError",
    "Modality",
    "PipelineParams",
    "RepresentationTriple",
    "SparseDenseClassifier",
    "__version__",
    "classify",
    "ftp_encode",
    "fuse",
    "kmeans_fit",
    "sgd_train",
]
