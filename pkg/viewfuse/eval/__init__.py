"""Evaluation protocols over a dataset manifest."""

from __future__ import annotations

from .bank import FeatureBank, RgbModels, fit_codebook, train_rgb_models
from .protocol import (
    Protocol,
    ProtocolSpec,
    SplitSpec,
    compute_accuracy,
    confusion_matrix,
    cross_subject_split,
    cross_view_split,
    protocol_splits,
    view_combinations,
)
from .runner import (
    MODALITIES,
    SplitResult,
    build_dictionary,
    evaluate_split,
    make_classifier,
    run_protocol,
    run_split,
    sweep_lambda1,
)

__all__ = [
    "MODALITIES",
    "FeatureBank",
    "Protocol",
    "ProtocolSpec",
    "RgbModels",
    "SplitResult",
    "SplitSpec",
    "build_dictionary",
    "compute_accuracy",
    "confusion_matrix",
    "cross_subject_split",
    "cross_view_split",
    "evaluate_split",
    "fit_codebook",
    "make_classifier",
    "protocol_splits",
    "run_protocol",
    "run_split",
    "sweep_lambda1",
    "train_rgb_models",
    "view_combinations",
]
