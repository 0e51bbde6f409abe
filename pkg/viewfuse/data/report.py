"""Evaluation reports: JSON documents with a deterministic field order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..core.errors import InvalidInputError


@dataclass
class SplitRecord:
    """Outcome of one train/test partition for one modality."""

    split: str
    train_views: list[int]
    test_view: int | None
    modality: str
    accuracy: float
    correct: int
    total: int
    confusion: list[list[int]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "split": self.split,
            "train_views": list(self.train_views),
            "test_view": self.test_view,
            "modality": self.modality,
            "accuracy": self.accuracy,
            "correct": self.correct,
            "total": self.total,
            "confusion": [list(row) for row in self.confusion],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SplitRecord:
        return cls(
            split=data["split"],
            train_views=list(data["train_views"]),
            test_view=data["test_view"],
            modality=data["modality"],
            accuracy=data["accuracy"],
            correct=data["correct"],
            total=data["total"],
            confusion=[list(row) for row in data["confusion"]],
        )


@dataclass
class EvaluationReport:
    """Per-split accuracies, per-modality means and the fusion comparison."""

    protocol: str
    records: list[SplitRecord] = field(default_factory=list)
    mean_accuracy: dict[str, float] = field(default_factory=dict)
    fusion_gain: float | None = None
    error_reduction: dict[str, float] = field(default_factory=dict)
    confusion_matrices: dict[str, list[list[int]]] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "protocol": self.protocol,
            "records": [r.to_dict() for r in self.records],
            "mean_accuracy": dict(self.mean_accuracy),
            "fusion_gain": self.fusion_gain,
            "error_reduction": dict(self.error_reduction),
            "confusion_matrices": {
                k: [list(r) for r in v] for k, v in self.confusion_matrices.items()
            },
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EvaluationReport:
        return cls(
            protocol=data["protocol"],
            records=[SplitRecord.from_dict(r) for r in data["records"]],
            mean_accuracy=dict(data["mean_accuracy"]),
            fusion_gain=data.get("fusion_gain"),
            error_reduction=dict(data.get("error_reduction", {})),
            confusion_matrices={
                k: [list(r) for r in v] for k, v in data.get("confusion_matrices", {}).items()
            },
            params=data.get("params", {}),
        )

    def validate(self) -> None:
        for record in self.records:
            if not 0.0 <= record.accuracy <= 1.0:
                raise InvalidInputError(f"Accuracy {record.accuracy} outside [0, 1]")
            if sum(map(sum, record.confusion)) != record.total:
                raise InvalidInputError(f"Confusion matrix of {record.split} does not sum to total")


@dataclass
class SweepReport:
    """Mean fused accuracy for every candidate value of the convex-combination weight."""

    protocol: str
    values: list[float]
    mean_accuracy: list[float]
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def best_value(self) -> float:
        # first maximum wins, so ties favour the smaller weight
        best = max(range(len(self.values)), key=lambda i: (self.mean_accuracy[i], -i))
        return self.values[best]

    def to_dict(self) -> dict[str, Any]:
        return {
            "protocol": self.protocol,
            "records": [
                {"lambda1": v, "mean_accuracy": a}
                for v, a in zip(self.values, self.mean_accuracy, strict=True)
            ],
            "best_lambda1": self.best_value,
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SweepReport:
        return cls(
            protocol=data["protocol"],
            values=[r["lambda1"] for r in data["records"]],
            mean_accuracy=[r["mean_accuracy"] for r in data["records"]],
            params=data.get("params", {}),
        )


def format_report(report: EvaluationReport | SweepReport) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=True) + "\n"


def write_report(report: EvaluationReport | SweepReport, path: Path | str) -> None:
    """Write ``report`` as JSON; identical reports produce byte-identical files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_report(report))


def read_report(path: Path | str) -> EvaluationReport:
    try:
        with open(path, encoding="ascii") as f:
            data = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"Malformed report {path}: {exc}") from exc
    try:
        return EvaluationReport.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"Malformed report {path}: {exc}") from exc
