"""Train/test partitions for the evaluation protocols."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError
from ..data.manifest import DatasetManifest, SampleRecord
from ..features.fusion import Modality


class Protocol(str, Enum):
    CROSS_VIEW = "cross-view"
    CROSS_SUBJECT = "cross-subject"


@dataclass(frozen=True)
class SplitSpec:
    """One partition of a manifest into training and test samples."""

    name: str
    train_views: tuple[int, ...]
    test_view: int | None = None
    train_subjects: frozenset[int] | None = None

    def partition(
        self, manifest: DatasetManifest
    ) -> tuple[list[SampleRecord], list[SampleRecord]]:
        if self.train_subjects is None:
            wanted = set(self.train_views)
            train = [s for s in manifest.samples if s.view in wanted]
            test = [s for s in manifest.samples if s.view == self.test_view]
        else:
            train = [s for s in manifest.samples if s.subject in self.train_subjects]
            test = [s for s in manifest.samples if s.subject not in self.train_subjects]
        if not train:
            raise InvalidInputError(f"Split {self.name} has no training samples")
        if not test:
            raise InvalidInputError(f"Split {self.name} has no test samples")
        return train, test


def cross_view_split(train_views: Sequence[int], test_view: int) -> SplitSpec:
    train = tuple(train_views)
    if not train:
        raise InvalidInputError("Need at least one training view")
    if test_view in train:
        raise InvalidInputError(f"Test view {test_view} is also a training view")
    name = ",".join(map(str, train)) + f"->{test_view}"
    return SplitSpec(name=name, train_views=train, test_view=test_view)


def view_combinations(views: Sequence[int]) -> list[tuple[tuple[int, int], int]]:
    """Every unordered training pair with every remaining test view: C(V,2) x (V-2)."""
    return [
        (pair, test)
        for pair in combinations(views, 2)
        for test in views
        if test not in pair
    ]


@dataclass(frozen=True)
class ProtocolSpec:
    views: tuple[int, ...]
    modality: Modality = Modality.FUSED

    @property
    def combinations(self) -> list[tuple[tuple[int, int], int]]:
        return view_combinations(self.views)


def cross_subject_split(manifest: DatasetManifest) -> SplitSpec:
    """Train on the lower half of the subject ids, test on the rest."""
    if any(s.subject is None for s in manifest.samples):
        raise InvalidInputError("Cross-subject protocol needs a subject id on every sample")
    subjects = sorted({s.subject for s in manifest.samples if s.subject is not None})
    if len(subjects) < 2:
        raise InvalidInputError("Cross-subject protocol needs at least two subjects")
    train = frozenset(subjects[: len(subjects) // 2])
    return SplitSpec(
        name="subjects " + ",".join(map(str, sorted(train))),
        train_views=tuple(manifest.views),
        train_subjects=train,
    )


def protocol_splits(manifest: DatasetManifest, protocol: Protocol | str) -> list[SplitSpec]:
    protocol = Protocol(protocol)
    if protocol is Protocol.CROSS_SUBJECT:
        return [cross_subject_split(manifest)]
    if len(manifest.views) < 3:
        raise InvalidInputError(
            f"Cross-view protocol needs at least 3 views, manifest has {len(manifest.views)}"
        )
    return [
        cross_view_split(pair, test)
        for pair, test in ProtocolSpec(tuple(manifest.views)).combinations
    ]


def compute_accuracy(predictions: ArrayLike, truths: ArrayLike) -> float:
    """Fraction of predictions equal to the truth."""
    predicted = np.asarray(predictions)
    expected = np.asarray(truths)
    if predicted.size == 0:
        raise InvalidInputError("Cannot compute accuracy of zero predictions")
    if predicted.shape != expected.shape:
        raise InvalidInputError(
            f"Prediction and truth lengths differ: {predicted.shape} vs {expected.shape}"
        )
    return int(np.count_nonzero(predicted == expected)) / predicted.size


def confusion_matrix(predictions: ArrayLike, truths: ArrayLike, num_classes: int) -> np.ndarray:
    """C x C counts, rows indexed by true class and columns by predicted class."""
    counts = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(counts, (np.asarray(truths), np.asarray(predictions)), 1)
    return counts
