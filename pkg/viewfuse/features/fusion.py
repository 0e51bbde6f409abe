"""Heterogeneous feature fusion.

Each sample vector is normalized on its own: Z-scored over its components, rescaled to
[0, 1], then the modality blocks are stacked and the joint column is scaled to unit
l2 norm. Training columns and test vectors therefore go through identical arithmetic.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError

# A column whose spread is below this fraction of its magnitude is treated as constant.
_CONSTANT_RTOL = 1e-12


class Modality(str, Enum):
    """Which feature blocks enter the dictionary."""

    DEPTH = "depth"
    RGB = "rgb"
    FUSED = "fused"

    @property
    def uses_depth(self) -> bool:
        return self is not Modality.RGB

    @property
    def uses_rgb(self) -> bool:
        return self is not Modality.DEPTH


@dataclass(frozen=True)
class ModalityFeatureSet:
    """dim x n features of one modality, one column per sample in canonical sample order."""

    values: np.ndarray
    modality: Modality

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.shape[1] < 1:
            raise InvalidInputError(
                f"{self.modality.value} features must be dim x n with n >= 1, "
                f"got shape {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError(f"{self.modality.value} features contain non-finite entries")


@dataclass(frozen=True)
class FusedDictionary:
    """Unit-norm dictionary columns X with their labels and the class indicator matrix B."""

    X: np.ndarray
    labels: np.ndarray
    B: np.ndarray
    block_dims: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return self.B.shape[0]

    @property
    def size(self) -> int:
        return self.X.shape[1]


def _as_matrix(m: ArrayLike) -> np.ndarray:
    values = np.asarray(m, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, np.newaxis]
    if values.ndim != 2:
        raise InvalidInputError(f"Expected a matrix, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Matrix contains non-finite entries")
    return values


def zscore_columns(m: ArrayLike) -> np.ndarray:
    """Per column: subtract the mean, divide by the population standard deviation.

    Constant columns map to zeros.
    """
    values = _as_matrix(m)
    if values.shape[0] < 2:
        raise InvalidInputError(f"Z-scores need at least 2 rows, got {values.shape[0]}")
    centered = values - values.mean(axis=0)
    std = np.sqrt(np.mean(centered * centered, axis=0))
    constant = std <= _CONSTANT_RTOL * np.abs(values).max(axis=0)
    out = np.zeros_like(values)
    out[:, ~constant] = centered[:, ~constant] / std[~constant]
    return out


def rescale_columns(m: ArrayLike) -> np.ndarray:
    """Per column min-max rescaling to [0, 1]; constant columns map to 0.5."""
    values = _as_matrix(m)
    low = values.min(axis=0)
    span = values.max(axis=0) - low
    out = np.full_like(values, 0.5)
    varying = span > 0
    out[:, varying] = (values[:, varying] - low[varying]) / span[varying]
    return np.clip(out, 0.0, 1.0)


def normalize_block(m: ArrayLike) -> np.ndarray:
    """Z-score then rescale every column of one modality block."""
    return rescale_columns(zscore_columns(m))


def l2_normalize_columns(m: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m, axis=0)
    if np.any(norms == 0):
        raise InvalidInputError("Cannot l2-normalize an all-zero column")
    return m / norms


def class_matrix(labels: ArrayLike, num_classes: int) -> np.ndarray:
    """C x n indicator matrix: B[i, j] = 1 iff sample j has label i."""
    values = np.asarray(labels)
    if values.ndim != 1 or (values.size and not np.issubdtype(values.dtype, np.integer)):
        raise InvalidInputError("Labels must be a 1-D sequence of integers")
    if num_classes < 1:
        raise InvalidInputError(f"Class count must be >= 1, got {num_classes}")
    if values.size and (values.min() < 0 or values.max() >= num_classes):
        raise InvalidInputError(f"Labels must lie in [0, {num_classes})")
    b = np.zeros((num_classes, values.size))
    b[values, np.arange(values.size)] = 1.0
    return b


def fuse_blocks(
    blocks: Sequence[ArrayLike],
    labels: ArrayLike,
    num_classes: int,
) -> FusedDictionary:
    """Normalize each block, stack the blocks row-wise and unit-normalize every column."""
    if not blocks:
        raise InvalidInputError("Need at least one feature block")
    matrices = [_as_matrix(b) for b in blocks]
    n = matrices[0].shape[1]
    if n < 1:
        raise InvalidInputError("Feature blocks have no samples")
    if any(m.shape[1] != n for m in matrices):
        counts = ", ".join(str(m.shape[1]) for m in matrices)
        raise InvalidInputError(f"Modality blocks disagree on sample count: {counts}")
    label_array = np.asarray(labels)
    if label_array.shape != (n,):
        raise InvalidInputError(f"Expected {n} labels, got shape {label_array.shape}")
    b = class_matrix(label_array, num_classes)
    stacked = np.vstack([normalize_block(m) for m in matrices])
    return FusedDictionary(
        X=l2_normalize_columns(stacked),
        labels=label_array.astype(np.int64),
        B=b,
        block_dims=tuple(m.shape[0] for m in matrices),
    )


def fuse(
    depth: ModalityFeatureSet | ArrayLike,
    rgb: ModalityFeatureSet | ArrayLike,
    labels: ArrayLike,
    num_classes: int,
) -> FusedDictionary:
    """Heterogeneous dictionary: depth rows above RGB rows."""
    blocks = [
        item.values if isinstance(item, ModalityFeatureSet) else item for item in (depth, rgb)
    ]
    return fuse_blocks(blocks, labels, num_classes)


def fuse_single(
    depth_vec: ArrayLike | None,
    rgb_vec: ArrayLike | None,
    modality: Modality = Modality.FUSED,
    block_dims: Sequence[int] | None = None,
) -> np.ndarray:
    """Joint feature of one test sample, normalized exactly like a dictionary column.

    ``block_dims`` (e.g. ``dictionary.block_dims``) checks each block against the
    dictionary it will be represented over.
    """
    parts: list[ArrayLike] = []
    if modality.uses_depth:
        if depth_vec is None:
            raise InvalidInputError(f"{modality.value} features need a depth vector")
        parts.append(depth_vec)
    if modality.uses_rgb:
        if rgb_vec is None:
            raise InvalidInputError(f"{modality.value} features need an RGB vector")
        parts.append(rgb_vec)
    blocks = []
    for part in parts:
        vector = np.asarray(part, dtype=np.float64)
        if vector.ndim != 1:
            raise InvalidInputError(f"Expected a feature vector, got shape {vector.shape}")
        blocks.append(normalize_block(vector[:, np.newaxis]))
    if block_dims is not None and tuple(b.shape[0] for b in blocks) != tuple(block_dims):
        got = tuple(b.shape[0] for b in blocks)
        raise InvalidInputError(
            f"Block dimensions {got} do not match dictionary {tuple(block_dims)}"
        )
    return l2_normalize_columns(np.vstack(blocks))[:, 0]


def check_dimensions(dictionary: FusedDictionary, y: np.ndarray) -> None:
    if y.shape != (dictionary.X.shape[0],):
        raise InvalidInputError(
            f"Test vector has shape {y.shape}, dictionary rows are {dictionary.X.shape[0]}"
        )
