"""Fourier temporal pyramid encoding of per-frame feature sequences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError

DEFAULT_LEVELS = 3
DEFAULT_COEFFS = 4


@dataclass(frozen=True)
class PyramidDescriptor:
    """Low-frequency magnitudes of every pyramid group, one row per feature dimension.

    ``values`` has ``(2**levels - 1) * coeffs`` columns: groups in level-major,
    left-to-right order, ``coeffs`` magnitudes each (DC first).
    """

    values: np.ndarray
    levels: int
    coeffs: int

    @property
    def groups(self) -> int:
        return 2**self.levels - 1


def as_feature_sequence(seq: ArrayLike) -> np.ndarray:
    """Validate a d x f per-frame feature matrix and return it as float64."""
    values = np.asarray(seq, dtype=np.float64)
    if values.ndim == 1:
        values = values[np.newaxis, :]
    if values.ndim != 2 or values.size == 0:
        raise InvalidInputError(
            f"Feature sequence must be a non-empty d x f matrix, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Feature sequence contains non-finite entries")
    return values


def pyramid_groups(frames: int, levels: int) -> list[tuple[int, int]]:
    """Return the (start, stop) frame ranges of every group in output order.

    Each level halves every group of the previous one, the first half taking the extra
    frame of an odd-length group. Groups may be empty when ``frames < 2**(levels - 1)``.
    """
    if levels < 1:
        raise InvalidInputError(f"levels must be >= 1, got {levels}")
    current = [(0, frames)]
    ordered = list(current)
    for _ in range(levels - 1):
        halved = []
        for start, stop in current:
            mid = start + (stop - start + 1) // 2
            halved.extend([(start, mid), (mid, stop)])
        ordered.extend(halved)
        current = halved
    return ordered


def ftp_encode(
    seq: ArrayLike,
    levels: int = DEFAULT_LEVELS,
    coeffs: int = DEFAULT_COEFFS,
) -> PyramidDescriptor:
    """Encode a d x f sequence into its d x ((2**levels - 1) * coeffs) pyramid descriptor.

    Every group is transformed independently; the magnitudes of its first ``coeffs`` DFT
    coefficients are kept and zero-padded when the group is shorter than ``coeffs``.
    """
    values = as_feature_sequence(seq)
    if coeffs < 1:
        raise InvalidInputError(f"coeffs must be >= 1, got {coeffs}")

    groups = pyramid_groups(values.shape[1], levels)
    out = np.zeros((values.shape[0], len(groups) * coeffs), dtype=np.float64)
    for g, (start, stop) in enumerate(groups):
        length = stop - start
        if length == 0:
            continue
        spectrum = np.fft.fft(values[:, start:stop], axis=1)
        kept = min(coeffs, length)
        out[:, g * coeffs : g * coeffs + kept] = np.abs(spectrum[:, :kept])
    return PyramidDescriptor(values=out, levels=levels, coeffs=coeffs)


def vectorize_descriptor(desc: PyramidDescriptor | ArrayLike) -> np.ndarray:
    """Stack descriptor columns into one vector (column-major)."""
    values = desc.values if isinstance(desc, PyramidDescriptor) else np.asarray(desc, dtype=float)
    if values.ndim != 2:
        raise InvalidInputError(f"Descriptor must be a matrix, got shape {values.shape}")
    return values.reshape(-1, order="F").copy()


def encode_depth(
    seq: ArrayLike,
    levels: int = DEFAULT_LEVELS,
    coeffs: int = DEFAULT_COEFFS,
) -> np.ndarray:
    """Depth feature of one video: the vectorized pyramid descriptor."""
    return vectorize_descriptor(ftp_encode(seq, levels, coeffs))
