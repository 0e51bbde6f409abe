"""Trajectory codebook: seeded k-means and bag-of-words histograms."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError
from ..core.rng import Stream, make_rng
from ..data.matrix import read_matrix, write_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Codebook:
    """K centroids stored column-wise (p x K). Column order is fixed at fit time."""

    centroids: np.ndarray
    objective_trace: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.centroids.ndim != 2 or self.centroids.shape[1] < 1:
            raise InvalidInputError(
                f"Codebook centroids must be a p x K matrix with K >= 1, "
                f"got shape {self.centroids.shape}"
            )
        if not np.all(np.isfinite(self.centroids)):
            raise InvalidInputError("Codebook contains non-finite centroids")
        self.centroids.setflags(write=False)

    @property
    def size(self) -> int:
        return self.centroids.shape[1]

    @property
    def dim(self) -> int:
        return self.centroids.shape[0]


def _as_points(points: ArrayLike, name: str = "trajectories") -> np.ndarray:
    values = np.asarray(points, dtype=np.float64)
    if values.ndim != 2:
        raise InvalidInputError(f"{name} must be an m x p matrix, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError(f"{name} contain non-finite entries")
    return values


_CHUNK_ELEMENTS = 1 << 22


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """m x K squared Euclidean distances between rows of ``points`` and rows of ``centers``.

    Differences are formed explicitly (no norm expansion) so equidistant ties stay exact.
    """
    m, k = points.shape[0], centers.shape[0]
    out = np.empty((m, k), dtype=np.float64)
    step = max(1, _CHUNK_ELEMENTS // max(1, k * points.shape[1]))
    for start in range(0, m, step):
        diff = points[start : start + step, np.newaxis, :] - centers[np.newaxis, :, :]
        out[start : start + step] = np.einsum("mkp,mkp->mk", diff, diff)
    return out


def _kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Seed k centers: first uniformly, then proportionally to squared distance."""
    m = points.shape[0]
    chosen = [int(rng.integers(m))]
    closest = _squared_distances(points, points[chosen]).ravel()
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(closest), rng.random() * total, side="right"))
            idx = min(idx, m - 1)
        else:
            # All points coincide with chosen centers; take the next unchosen index.
            idx = next(i for i in range(m) if i not in chosen)
        chosen.append(idx)
        closest = np.minimum(closest, _squared_distances(points, points[[idx]]).ravel())
    return points[chosen].copy()


def kmeans_fit(
    points: ArrayLike,
    k: int,
    seed: int = 0,
    max_iters: int = 100,
    tol: float = 1e-6,
) -> Codebook:
    """Fit a K-centroid codebook with Lloyd's algorithm and k-means++ seeding.

    Stops when the largest centroid displacement drops below ``tol`` or after
    ``max_iters`` iterations. An empty cluster is reseeded with the point farthest from
    its assigned centroid. Bit-deterministic for fixed arguments.
    """
    data = _as_points(points)
    m = data.shape[0]
    if k < 1:
        raise InvalidInputError(f"K must be >= 1, got {k}")
    if m < k:
        raise InvalidInputError(f"Need at least K={k} points to fit a codebook, got {m}")
    if not tol > 0 or max_iters < 1:
        raise InvalidInputError("tol must be > 0 and max_iters >= 1")

    rng = make_rng(seed, Stream.CODEBOOK)
    centers = _kmeans_plus_plus(data, k, rng)
    trace: list[float] = []

    for iteration in range(max_iters):
        dist = _squared_distances(data, centers)
        labels = np.argmin(dist, axis=1)
        point_dist = dist[np.arange(m), labels]
        trace.append(float(point_dist.sum()))

        updated = np.empty_like(centers)
        counts = np.bincount(labels, minlength=k)
        taken: set[int] = set()
        for j in range(k):
            if counts[j] > 0:
                updated[j] = data[labels == j].mean(axis=0)
                continue
            # Reseed from the farthest point not already used for another empty cluster.
            for candidate in np.argsort(-point_dist, kind="stable"):
                if int(candidate) not in taken:
                    taken.add(int(candidate))
                    updated[j] = data[candidate]
                    break
            logger.debug("Reseeded empty cluster %d at iteration %d", j, iteration)

        shift = float(np.max(np.linalg.norm(updated - centers, axis=1)))
        centers = updated
        if shift < tol:
            logger.debug("k-means converged after %d iterations", iteration + 1)
            break
    else:
        logger.info("k-means stopped at max_iters=%d", max_iters)

    final = _squared_distances(data, centers)
    trace.append(float(final.min(axis=1).sum()))
    return Codebook(centroids=centers.T.copy(), objective_trace=tuple(trace))


def assign(points: ArrayLike, codebook: Codebook) -> np.ndarray:
    """Nearest-centroid index for every row, ties broken by lowest index."""
    data = _as_points(points)
    if data.shape[1] != codebook.dim:
        raise InvalidInputError(
            f"Trajectory dimension {data.shape[1]} does not match codebook dimension "
            f"{codebook.dim}"
        )
    # argmin returns the first minimum, which is the lowest-index tie-break.
    return np.argmin(_squared_distances(data, codebook.centroids.T), axis=1)


def nearest_centroid(v: ArrayLike, codebook: Codebook) -> int:
    """Index of the centroid closest to ``v`` in Euclidean distance."""
    vector = np.asarray(v, dtype=np.float64)
    if vector.ndim != 1:
        raise InvalidInputError(f"Expected a vector, got shape {vector.shape}")
    return int(assign(vector[np.newaxis, :], codebook)[0])


def bow_encode(trajectories: ArrayLike, codebook: Codebook) -> np.ndarray:
    """L1-normalized histogram of nearest-centroid hits."""
    data = _as_points(trajectories)
    if data.shape[0] == 0:
        raise InvalidInputError("No trajectories to encode")
    labels = assign(data, codebook)
    counts = np.bincount(labels, minlength=codebook.size).astype(np.float64)
    return counts / data.shape[0]


def save_codebook(codebook: Codebook, path: Path | str) -> None:
    write_matrix(codebook.centroids, path)


def load_codebook(path: Path | str) -> Codebook:
    return Codebook(centroids=read_matrix(path))
