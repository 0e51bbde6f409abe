"""Run splits and whole protocols through the fusion and classification pipeline."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..classify.crc import SparseDenseClassifier
from ..classify.solvers import DenseRep, SparseRep
from ..core.config import PipelineParams
from ..core.errors import InvalidInputError
from ..data.manifest import DatasetManifest, SampleRecord
from ..data.report import EvaluationReport, SplitRecord, SweepReport
from ..features.fusion import FusedDictionary, Modality, fuse_blocks, fuse_single
from .bank import FeatureBank
from .protocol import (
    Protocol,
    SplitSpec,
    compute_accuracy,
    confusion_matrix,
    cross_view_split,
    protocol_splits,
)

logger = logging.getLogger(__name__)

MODALITIES = (Modality.DEPTH, Modality.RGB, Modality.FUSED)


@dataclass(frozen=True)
class SplitResult:
    split: SplitSpec
    modality: Modality
    predictions: np.ndarray
    truths: np.ndarray
    accuracy: float
    confusion: np.ndarray

    def to_record(self) -> SplitRecord:
        return SplitRecord(
            split=self.split.name,
            train_views=list(self.split.train_views),
            test_view=self.split.test_view,
            modality=self.modality.value,
            accuracy=self.accuracy,
            correct=int(np.trace(self.confusion)),
            total=int(self.truths.size),
            confusion=self.confusion.tolist(),
        )


def build_dictionary(
    bank: FeatureBank, records: Sequence[SampleRecord], modality: Modality
) -> FusedDictionary:
    """Dictionary over the training records; single modalities use one normalized block."""
    labels = [r.label for r in records]
    return fuse_blocks(bank.blocks(records, modality), labels, bank.manifest.num_classes)


def make_classifier(dictionary: FusedDictionary, params: PipelineParams) -> SparseDenseClassifier:
    sparsity = min(params.sparsity, dictionary.size)
    if sparsity < params.sparsity:
        logger.debug("Clamped sparsity %d to dictionary size %d", params.sparsity, sparsity)
    return SparseDenseClassifier(
        dictionary,
        lambda_=params.lambda_,
        lambda1=params.lambda1,
        sparsity=sparsity,
        residual_tol=params.residual_tol,
    )


@dataclass(frozen=True)
class _Represented:
    classifier: SparseDenseClassifier
    representations: list[tuple[DenseRep, SparseRep]]
    truths: np.ndarray


def _represent_split(
    bank: FeatureBank, split: SplitSpec, params: PipelineParams, modality: Modality
) -> _Represented:
    train, test = split.partition(bank.manifest)
    dictionary = build_dictionary(bank, train, modality)
    classifier = make_classifier(dictionary, params)
    representations = []
    for record in test:
        depth, rgb = bank.vectors(record, modality)
        y = fuse_single(depth, rgb, modality, dictionary.block_dims)
        representations.append(classifier.represent(y))
    truths = np.array([r.label for r in test], dtype=np.int64)
    return _Represented(classifier, representations, truths)


def _score(
    represented: _Represented,
    split: SplitSpec,
    modality: Modality,
    num_classes: int,
    lambda1: float | None = None,
) -> SplitResult:
    predictions = np.array(
        [
            represented.classifier.label(dense, sparse, lambda1)[0]
            for dense, sparse in represented.representations
        ],
        dtype=np.int64,
    )
    return SplitResult(
        split=split,
        modality=modality,
        predictions=predictions,
        truths=represented.truths,
        accuracy=compute_accuracy(predictions, represented.truths),
        confusion=confusion_matrix(predictions, represented.truths, num_classes),
    )


def evaluate_split(
    bank: FeatureBank, split: SplitSpec, params: PipelineParams, modality: Modality
) -> SplitResult:
    result = _score(
        _represent_split(bank, split, params, modality),
        split,
        modality,
        bank.manifest.num_classes,
    )
    logger.info("%s [%s]: accuracy %.4f", split.name, modality.value, result.accuracy)
    return result


def run_split(
    manifest: DatasetManifest,
    train_views: Sequence[int],
    test_view: int,
    params: PipelineParams,
    modality: Modality | str = Modality.FUSED,
    bank: FeatureBank | None = None,
) -> SplitResult:
    """Train on ``train_views``, classify every sample of ``test_view``."""
    params.validate()
    split = cross_view_split(train_views, test_view)
    return evaluate_split(bank or FeatureBank(manifest, params), split, params, Modality(modality))


def _collect(
    stream: Iterable[SplitResult], on_result: Callable[[SplitResult], None] | None
) -> list[SplitResult]:
    results = []
    for result in stream:
        results.append(result)
        if on_result is not None:
            on_result(result)
    return results


def _map_ordered(
    work: Callable[[tuple[SplitSpec, Modality]], SplitResult],
    tasks: list[tuple[SplitSpec, Modality]],
    parallel: int,
    on_result: Callable[[SplitResult], None] | None,
) -> list[SplitResult]:
    if parallel < 1:
        raise InvalidInputError(f"parallel must be >= 1, got {parallel}")
    if parallel == 1:
        return _collect(map(work, tasks), on_result)
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        # map yields in submission order whatever the completion order
        return _collect(pool.map(work, tasks), on_result)


def _mean(values: Sequence[float]) -> float:
    return float(sum(values) / len(values))


def _error_reduction(depth: float, rgb: float, fused: float) -> float:
    """Relative error-rate reduction of fused over the best single modality."""
    best_error = 1.0 - max(depth, rgb)
    if best_error <= 0.0:
        return 0.0
    return (best_error - (1.0 - fused)) / best_error


def run_protocol(
    manifest: DatasetManifest,
    params: PipelineParams,
    protocol: Protocol | str = Protocol.CROSS_VIEW,
    parallel: int = 1,
    bank: FeatureBank | None = None,
    on_result: Callable[[SplitResult], None] | None = None,
) -> EvaluationReport:
    """Evaluate every split of ``protocol`` for depth-only, RGB-only and fused features.

    Records are ordered by split, then modality, regardless of ``parallel``.
    """
    params.validate()
    protocol = Protocol(protocol)
    splits = protocol_splits(manifest, protocol)
    bank = bank or FeatureBank(manifest, params)
    # encode everything before any worker thread reads the cache
    bank.prefetch(manifest.samples, Modality.FUSED)

    tasks = [(split, modality) for split in splits for modality in MODALITIES]
    results = _map_ordered(
        lambda task: evaluate_split(bank, task[0], params, task[1]), tasks, parallel, on_result
    )

    by_modality = {m: [r for r in results if r.modality is m] for m in MODALITIES}
    means = {m.value: _mean([r.accuracy for r in by_modality[m]]) for m in MODALITIES}
    error_reduction = {
        split.name: _error_reduction(
            *(by_modality[m][i].accuracy for m in MODALITIES)
        )
        for i, split in enumerate(splits)
    }
    confusion = {
        m.value: sum((r.confusion for r in by_modality[m]), np.zeros_like(results[0].confusion))
        for m in MODALITIES
    }
    report = EvaluationReport(
        protocol=protocol.value,
        records=[r.to_record() for r in results],
        mean_accuracy=means,
        fusion_gain=means["fused"] - max(means["depth"], means["rgb"]),
        error_reduction=error_reduction,
        confusion_matrices={k: v.tolist() for k, v in confusion.items()},
        params=params.to_dict(),
    )
    report.validate()
    logger.info("Mean accuracy %s", means)
    return report


def sweep_lambda1(
    manifest: DatasetManifest,
    params: PipelineParams,
    values: Sequence[float],
    protocol: Protocol | str = Protocol.CROSS_VIEW,
    parallel: int = 1,
    bank: FeatureBank | None = None,
) -> SweepReport:
    """Mean fused accuracy for each combination weight.

    Dense and sparse representations do not depend on the weight, so each split is
    represented once and re-scored per value.
    """
    params.validate()
    if not values:
        raise InvalidInputError("Need at least one lambda1 value")
    for value in values:
        if not 0.0 <= value <= 1.0:
            raise InvalidInputError(f"lambda1 must lie in [0, 1], got {value}")
    if parallel < 1:
        raise InvalidInputError(f"parallel must be >= 1, got {parallel}")
    protocol = Protocol(protocol)
    splits = protocol_splits(manifest, protocol)
    bank = bank or FeatureBank(manifest, params)
    bank.prefetch(manifest.samples, Modality.FUSED)

    def represent(split: SplitSpec) -> _Represented:
        return _represent_split(bank, split, params, Modality.FUSED)

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            represented = list(pool.map(represent, splits))
    else:
        represented = [represent(split) for split in splits]

    num_classes = manifest.num_classes
    means = [
        _mean(
            [
                _score(rep, split, Modality.FUSED, num_classes, value).accuracy
                for rep, split in zip(represented, splits, strict=True)
            ]
        )
        for value in values
    ]
    for value, mean in zip(values, means, strict=True):
        logger.info("lambda1=%g: mean accuracy %.4f", value, mean)
    return SweepReport(
        protocol=protocol.value,
        values=[float(v) for v in values],
        mean_accuracy=means,
        params=params.to_dict(),
    )
