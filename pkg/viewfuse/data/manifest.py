"""Dataset manifests: which samples exist, their classes, views and files."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..core.errors import ManifestError
from .matrix import read_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleRecord:
    """One video: its class, camera view and the files holding its two streams."""

    id: str
    label: int
    view: int
    depth: str  # path to the d x f depth feature sequence, relative to the manifest
    trajectories: str  # path to the m x p trajectory set, relative to the manifest
    subject: int | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.id,
            "class": self.label,
            "view": self.view,
            "depth": self.depth,
            "trajectories": self.trajectories,
        }
        if self.subject is not None:
            data["subject"] = self.subject
        return data


@dataclass(frozen=True)
class TransferRecord:
    """The same motion's trajectories seen from ``view`` and from the canonical view."""

    view: int
    specific: str
    canonical: str

    def to_dict(self) -> dict[str, Any]:
        return {"view": self.view, "specific": self.specific, "canonical": self.canonical}


@dataclass
class DatasetManifest:
    """Validated dataset description rooted at the manifest's directory.

    Sample files are read through ``read_depth``/``read_trajectories``/``read_transfer``,
    which record every path in ``access_log``.
    """

    num_classes: int
    views: list[int]
    samples: list[SampleRecord]
    transfer: list[TransferRecord] = field(default_factory=list)
    root: Path = field(default_factory=Path.cwd)
    access_log: list[Path] = field(default_factory=list, compare=False, repr=False)

    def resolve(self, relative: str) -> Path:
        return self.root / relative

    def _read(self, relative: str) -> np.ndarray:
        path = self.resolve(relative)
        self.access_log.append(path)
        return read_matrix(path)

    def read_depth(self, record: SampleRecord) -> np.ndarray:
        return self._read(record.depth)

    def read_trajectories(self, record: SampleRecord) -> np.ndarray:
        return self._read(record.trajectories)

    def read_transfer(self, record: TransferRecord) -> tuple[np.ndarray, np.ndarray]:
        return self._read(record.specific), self._read(record.canonical)

    def samples_in_views(self, views: set[int] | list[int]) -> list[SampleRecord]:
        wanted = set(views)
        return [s for s in self.samples if s.view in wanted]

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "classes": self.num_classes,
            "views": list(self.views),
            "samples": [s.to_dict() for s in self.samples],
        }
        if self.transfer:
            data["transfer"] = [t.to_dict() for t in self.transfer]
        return data


def _require(data: dict[str, Any], key: str, kind: type, where: str, path: Path) -> Any:
    if key not in data:
        raise ManifestError(path, f"{where}: missing field '{key}'")
    value = data[key]
    # bool is an int subclass; reject it where an integer is expected
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ManifestError(path, f"{where}: field '{key}' must be {kind.__name__}")
    return value


def _relative_path(value: str, where: str, key: str, root: Path, path: Path) -> str:
    if Path(value).is_absolute():
        raise ManifestError(path, f"{where}: '{key}' must be relative to the manifest")
    if not (root / value).is_file():
        raise ManifestError(path, f"{where}: '{key}' points to missing file {value}")
    return value


def manifest_from_dict(data: Any, root: Path, path: Path) -> DatasetManifest:
    """Validate a parsed manifest document eagerly."""
    if not isinstance(data, dict):
        raise ManifestError(path, "top level must be a JSON object")
    num_classes = _require(data, "classes", int, "manifest", path)
    if num_classes < 1:
        raise ManifestError(path, f"'classes' must be >= 1, got {num_classes}")
    views = _require(data, "views", list, "manifest", path)
    if not views or not all(isinstance(v, int) and not isinstance(v, bool) for v in views):
        raise ManifestError(path, "'views' must be a non-empty list of integers")
    if len(set(views)) != len(views):
        raise ManifestError(path, "'views' contains duplicates")

    samples: list[SampleRecord] = []
    seen: set[str] = set()
    for i, item in enumerate(_require(data, "samples", list, "manifest", path)):
        where = f"samples[{i}]"
        if not isinstance(item, dict):
            raise ManifestError(path, f"{where}: must be an object")
        sample_id = _require(item, "id", str, where, path)
        if sample_id in seen:
            raise ManifestError(path, f"{where}: duplicate sample id '{sample_id}'")
        seen.add(sample_id)
        label = _require(item, "class", int, where, path)
        if not 0 <= label < num_classes:
            raise ManifestError(
                path, f"{where}: class index {label} outside [0, {num_classes})"
            )
        view = _require(item, "view", int, where, path)
        if view not in views:
            raise ManifestError(path, f"{where}: view {view} not in the view list")
        subject = item.get("subject")
        if subject is not None and (not isinstance(subject, int) or isinstance(subject, bool)):
            raise ManifestError(path, f"{where}: 'subject' must be an integer")
        samples.append(
            SampleRecord(
                id=sample_id,
                label=label,
                view=view,
                depth=_relative_path(
                    _require(item, "depth", str, where, path), where, "depth", root, path
                ),
                trajectories=_relative_path(
                    _require(item, "trajectories", str, where, path),
                    where,
                    "trajectories",
                    root,
                    path,
                ),
                subject=subject,
            )
        )

    transfer: list[TransferRecord] = []
    for i, item in enumerate(data.get("transfer", [])):
        where = f"transfer[{i}]"
        if not isinstance(item, dict):
            raise ManifestError(path, f"{where}: must be an object")
        view = _require(item, "view", int, where, path)
        if view not in views:
            raise ManifestError(path, f"{where}: view {view} not in the view list")
        transfer.append(
            TransferRecord(
                view=view,
                specific=_relative_path(
                    _require(item, "specific", str, where, path), where, "specific", root, path
                ),
                canonical=_relative_path(
                    _require(item, "canonical", str, where, path), where, "canonical", root, path
                ),
            )
        )

    return DatasetManifest(
        num_classes=num_classes,
        views=list(views),
        samples=samples,
        transfer=transfer,
        root=root,
    )


def load_manifest(path: Path | str) -> DatasetManifest:
    """Load and validate a manifest; all invariants are checked before returning."""
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ManifestError(path, f"not valid JSON ({exc})") from exc
    manifest = manifest_from_dict(data, path.parent, path)
    logger.info(
        "Loaded manifest %s: %d samples, %d classes, views %s",
        path,
        len(manifest.samples),
        manifest.num_classes,
        manifest.views,
    )
    return manifest


def write_manifest(manifest: DatasetManifest, path: Path | str) -> None:
    """Write ``manifest`` as JSON with a fixed field order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(manifest.to_dict(), indent=2, ensure_ascii=True) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(text)
