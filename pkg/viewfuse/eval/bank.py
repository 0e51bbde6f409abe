"""Per-sample feature cache shared by every split of a protocol run."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..core.config import PipelineParams
from ..core.errors import InvalidInputError
from ..data.manifest import DatasetManifest, SampleRecord
from ..features.codebook import Codebook, bow_encode, kmeans_fit
from ..features.fusion import Modality
from ..features.pyramid import encode_depth
from ..features.viewnet import NetworkParams, extract_feature, make_training_pairs, sgd_train

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RgbModels:
    codebook: Codebook
    network: NetworkParams

    def __post_init__(self) -> None:
        if self.network.input_dim != self.codebook.size:
            raise InvalidInputError(
                f"Network input dimension {self.network.input_dim} does not match "
                f"codebook size {self.codebook.size}"
            )


def _fit_codebook(points: np.ndarray, params: PipelineParams) -> Codebook:
    logger.info("Fitting %d-word codebook on %d trajectories", params.codebook_size, len(points))
    return kmeans_fit(
        points,
        params.codebook_size,
        seed=params.seed,
        max_iters=params.kmeans_max_iters,
        tol=params.kmeans_tol,
    )


def fit_codebook(manifest: DatasetManifest, params: PipelineParams) -> Codebook:
    """Codebook over the transfer corpus, or over all sample trajectories when there is none."""
    if manifest.transfer:
        sets = [manifest.read_transfer(record)[0] for record in manifest.transfer]
    else:
        sets = [manifest.read_trajectories(record) for record in manifest.samples]
    return _fit_codebook(np.vstack(sets), params)


def train_rgb_models(
    manifest: DatasetManifest,
    params: PipelineParams,
    codebook: Codebook | None = None,
) -> RgbModels:
    """Fit the codebook and the view-transfer network on the manifest's transfer corpus.

    A given ``codebook`` is used as-is and only the network is trained.
    """
    if not manifest.transfer:
        raise InvalidInputError(
            "Manifest has no transfer corpus; pass a trained codebook and network instead"
        )
    set_pairs = [manifest.read_transfer(record) for record in manifest.transfer]

    if codebook is None:
        codebook = _fit_codebook(np.vstack([specific for specific, _ in set_pairs]), params)
    pairs = make_training_pairs(set_pairs, codebook)
    logger.info("Training view-transfer network on %d pairs", len(pairs))
    network, trace = sgd_train(pairs, params.train, seed=params.seed, widths=params.widths)
    logger.info("Final training loss %.6g", trace[-1])
    return RgbModels(codebook=codebook, network=network)


class FeatureBank:
    """Lazily encodes depth and RGB features of manifest samples, once per sample.

    RGB models are trained on first RGB use unless supplied. Depth-only use never touches
    trajectory or transfer files.
    """

    def __init__(
        self,
        manifest: DatasetManifest,
        params: PipelineParams,
        codebook: Codebook | None = None,
        network: NetworkParams | None = None,
    ) -> None:
        if network is not None and codebook is None:
            raise InvalidInputError(
                "A view-transfer network needs the codebook it was trained with"
            )
        self.manifest = manifest
        self.params = params
        self._codebook = codebook
        self._models = (
            RgbModels(codebook, network)
            if codebook is not None and network is not None
            else None
        )
        self._depth: dict[str, np.ndarray] = {}
        self._rgb: dict[str, np.ndarray] = {}

    @property
    def models(self) -> RgbModels:
        if self._models is None:
            self._models = train_rgb_models(self.manifest, self.params, self._codebook)
        return self._models

    def depth(self, record: SampleRecord) -> np.ndarray:
        if record.id not in self._depth:
            self._depth[record.id] = encode_depth(
                self.manifest.read_depth(record), self.params.levels, self.params.coeffs
            )
        return self._depth[record.id]

    def rgb(self, record: SampleRecord) -> np.ndarray:
        if record.id not in self._rgb:
            models = self.models
            histogram = bow_encode(self.manifest.read_trajectories(record), models.codebook)
            self._rgb[record.id] = extract_feature(models.network, histogram)
        return self._rgb[record.id]

    def vectors(
        self, record: SampleRecord, modality: Modality
    ) -> tuple[np.ndarray | None, np.ndarray | None]:
        """(depth, rgb) features of one sample; the unused modality is None."""
        depth = self.depth(record) if modality.uses_depth else None
        rgb = self.rgb(record) if modality.uses_rgb else None
        return depth, rgb

    def blocks(self, records: Sequence[SampleRecord], modality: Modality) -> list[np.ndarray]:
        """Feature blocks (one column per record) for the modality, depth block first."""
        out = []
        if modality.uses_depth:
            out.append(np.column_stack([self.depth(r) for r in records]))
        if modality.uses_rgb:
            out.append(np.column_stack([self.rgb(r) for r in records]))
        return out

    def prefetch(self, records: Sequence[SampleRecord], modality: Modality) -> None:
        """Encode every record up front so later reads are pure cache hits."""
        for record in records:
            self.vectors(record, modality)
