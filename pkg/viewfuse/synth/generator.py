"""Seeded multi-view synthetic benchmark.

Every class owns a depth prototype, a temporal modulation and a small mixture of
trajectory centers. A sample seen from view ``v`` is the class pattern plus noise, pushed
through that view's orthogonal transform (view 0 is the canonical, untransformed view).
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import numpy as np

from ..core.errors import InvalidInputError
from ..core.rng import Stream, make_rng
from ..data.manifest import DatasetManifest, SampleRecord, TransferRecord, write_manifest
from ..data.matrix import write_matrix

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class SynthConfig:
    """Size and difficulty of a synthetic benchmark."""

    classes: int = 5
    views: int = 4
    samples: int = 8  # per (class, view) cell
    depth_dim: int = 32
    frames: int = 16
    trajectories: int = 40
    trajectory_dim: int = 6
    separation: float = 3.0
    noise: float = 0.3
    seed: int = 7
    clusters_per_class: int = 3
    view_spread: float = 0.35
    transfer_per_class: int | None = None  # defaults to ``samples``

    @property
    def transfer_motions(self) -> int:
        return self.samples if self.transfer_per_class is None else self.transfer_per_class

    def validate(self) -> None:
        counts = {
            "classes": self.classes,
            "views": self.views,
            "samples": self.samples,
            "depth_dim": self.depth_dim,
            "frames": self.frames,
            "trajectories": self.trajectories,
            "trajectory_dim": self.trajectory_dim,
            "clusters_per_class": self.clusters_per_class,
            "transfer_per_class": self.transfer_motions,
        }
        problems = [
            f"{name} must be >= 1 (got {value})" for name, value in counts.items() if value < 1
        ]
        if not self.separation > 0:
            problems.append(f"separation must be > 0 (got {self.separation})")
        if self.noise < 0:
            problems.append(f"noise must be >= 0 (got {self.noise})")
        if self.view_spread < 0:
            problems.append(f"view_spread must be >= 0 (got {self.view_spread})")
        if self.seed < 0:
            problems.append(f"seed must be >= 0 (got {self.seed})")
        if problems:
            raise InvalidInputError("Invalid synthetic config: " + "; ".join(problems))

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def make_view_transform(view: int, dim: int, seed: int, spread: float = 0.35) -> np.ndarray:
    """Orthogonal dim x dim transform of camera ``view``.

    The Q factor of ``I + (spread / sqrt(dim)) * G`` with G standard Gaussian, signs fixed so
    that R has a non-negative diagonal. View 0 is the identity.
    """
    if dim < 1:
        raise InvalidInputError(f"Transform dimension must be >= 1, got {dim}")
    if view < 0:
        raise InvalidInputError(f"View index must be >= 0, got {view}")
    if view == 0:
        return np.eye(dim)
    rng = make_rng(seed, Stream.TRANSFORM, view, dim)
    gaussian = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(np.eye(dim) + (spread / math.sqrt(dim)) * gaussian)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    return q * signs[np.newaxis, :]


@dataclass(frozen=True)
class _ClassPattern:
    depth_prototype: np.ndarray  # d
    modulation: np.ndarray  # f
    centers: np.ndarray  # h x p


def _class_pattern(cfg: SynthConfig, label: int) -> _ClassPattern:
    proto_rng = make_rng(cfg.seed, Stream.PROTOTYPE, label)
    depth_prototype = cfg.separation * proto_rng.standard_normal(cfg.depth_dim)
    centers = cfg.separation * proto_rng.standard_normal(
        (cfg.clusters_per_class, cfg.trajectory_dim)
    )

    mod_rng = make_rng(cfg.seed, Stream.MODULATION, label)
    frequency = int(mod_rng.integers(1, max(2, cfg.frames // 2)))
    phase = float(mod_rng.uniform(0.0, 2.0 * math.pi))
    t = np.arange(cfg.frames)
    modulation = 1.0 + 0.5 * np.sin(2.0 * math.pi * frequency * t / cfg.frames + phase)
    return _ClassPattern(depth_prototype, modulation, centers)


def _trajectory_set(
    cfg: SynthConfig, pattern: _ClassPattern, rng: np.random.Generator
) -> np.ndarray:
    """Canonical-view trajectories; row r sits at mixture center r mod h."""
    rows = pattern.centers[np.arange(cfg.trajectories) % cfg.clusters_per_class]
    return rows + cfg.noise * rng.standard_normal(rows.shape)


def generate_dataset(cfg: SynthConfig, out_dir: Path | str) -> DatasetManifest:
    """Write a benchmark under ``out_dir`` and return its manifest.

    Layout: ``depth/<id>.txt`` (d x f), ``trajectories/<id>.txt`` (m x p),
    ``transfer/*.txt`` and ``manifest.json``. Output bytes depend only on ``cfg``.
    """
    cfg.validate()
    root = Path(out_dir)
    for sub in ("depth", "trajectories", "transfer"):
        (root / sub).mkdir(parents=True, exist_ok=True)

    views = list(range(cfg.views))
    depth_transforms = [
        make_view_transform(v, cfg.depth_dim, cfg.seed, cfg.view_spread) for v in views
    ]
    traj_transforms = [
        make_view_transform(v, cfg.trajectory_dim, cfg.seed, cfg.view_spread) for v in views
    ]
    patterns = [_class_pattern(cfg, c) for c in range(cfg.classes)]

    samples: list[SampleRecord] = []
    for c, pattern in enumerate(patterns):
        clean_depth = np.outer(pattern.depth_prototype, pattern.modulation)
        for v in views:
            for s in range(cfg.samples):
                sample_id = f"c{c:02d}_v{v}_s{s:02d}"
                noise_rng = make_rng(cfg.seed, Stream.DEPTH_NOISE, c, v, s)
                depth = depth_transforms[v] @ (
                    clean_depth + cfg.noise * noise_rng.standard_normal(clean_depth.shape)
                )
                traj_rng = make_rng(cfg.seed, Stream.TRAJECTORY, c, v, s)
                # rows are points, so x -> Q x becomes X Q^T
                trajectories = _trajectory_set(cfg, pattern, traj_rng) @ traj_transforms[v].T

                depth_path = f"depth/{sample_id}.txt"
                traj_path = f"trajectories/{sample_id}.txt"
                write_matrix(depth, root / depth_path)
                write_matrix(trajectories, root / traj_path)
                samples.append(
                    SampleRecord(
                        id=sample_id,
                        label=c,
                        view=v,
                        depth=depth_path,
                        trajectories=traj_path,
                        subject=s,
                    )
                )

    transfer: list[TransferRecord] = []
    for c, pattern in enumerate(patterns):
        for j in range(cfg.transfer_motions):
            canonical = _trajectory_set(
                cfg, pattern, make_rng(cfg.seed, Stream.TRANSFER, c, j)
            )
            canonical_path = f"transfer/c{c:02d}_m{j:02d}_canonical.txt"
            write_matrix(canonical, root / canonical_path)
            for v in views:
                specific_path = f"transfer/c{c:02d}_m{j:02d}_v{v}.txt"
                write_matrix(canonical @ traj_transforms[v].T, root / specific_path)
                transfer.append(
                    TransferRecord(view=v, specific=specific_path, canonical=canonical_path)
                )

    manifest = DatasetManifest(
        num_classes=cfg.classes,
        views=views,
        samples=samples,
        transfer=transfer,
        root=root,
    )
    write_manifest(manifest, root / MANIFEST_NAME)
    logger.info(
        "Generated %d samples and %d transfer pairs under %s",
        len(samples),
        len(transfer),
        root,
    )
    return manifest
