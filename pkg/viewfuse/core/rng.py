"""Named, splittable random streams.

All randomness in the package flows through ``make_rng``. A stream is identified by the
master seed plus a key path (purpose and indices), so adding samples or purposes never
perturbs the values drawn by existing streams.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Purposes that own an independent random stream."""

    PROTOTYPE = 0
    MODULATION = 1
    DEPTH_NOISE = 2
    TRAJECTORY = 3
    TRANSFORM = 4
    TRANSFER = 5
    CODEBOOK = 6
    NETWORK_INIT = 7
    NETWORK_TRAIN = 8
    DROPOUT = 9


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Return a PCG64 generator for ``seed`` and the stream ``key``."""
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, *key: int) -> int:
    """Derive a child integer seed, for APIs that take a plain seed."""
    return int(make_rng(seed, *key).integers(0, 2**63 - 1))
