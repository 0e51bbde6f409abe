"""Core building blocks: parameters, errors, random streams."""

from __future__ import annotations

from .config import DESK_TRAIN, DESK_WIDTHS, FULL_WIDTHS, PipelineParams, TrainConfig
from .errors import InvalidInputError, ManifestError, MatrixFormatError
from .rng import Stream, derive_seed, make_rng

__all__ = [
    "DESK_TRAIN",
    "DESK_WIDTHS",
    "FULL_WIDTHS",
    "InvalidInputError",
    "ManifestError",
    "MatrixFormatError",
    "PipelineParams",
    "Stream",
    "TrainConfig",
    "derive_seed",
    "make_rng",
]
