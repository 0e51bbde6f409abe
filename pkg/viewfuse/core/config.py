"""Pipeline parameters: portable YAML config for every tunable value of a run."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import yaml

from .errors import InvalidInputError

FULL_WIDTHS = (1000, 1000, 2000, 2000)
DESK_WIDTHS = (16, 16, 32, 32)


@dataclass(frozen=True)
class TrainConfig:
    """SGD recipe for the view-transfer network.

    The step schedule divides ``initial_lr`` by ``lr_drop_factor`` every ``lr_drop_every``
    iterations. Weight decay applies to weights only.
    """

    initial_lr: float = 0.001
    lr_drop_factor: float = 10.0
    lr_drop_every: int = 1000
    weight_decay: float = 0.0005
    total_iters: int = 6000
    momentum: float = 0.9
    batch_size: int = 64
    dropout_rate: float = 0.5

    def validate(self) -> None:
        problems = []
        if not self.initial_lr >= 0 or not math.isfinite(self.initial_lr):
            problems.append(f"initial_lr must be a finite value >= 0 (got {self.initial_lr})")
        if not self.lr_drop_factor > 0:
            problems.append(f"lr_drop_factor must be > 0 (got {self.lr_drop_factor})")
        if self.lr_drop_every < 1:
            problems.append(f"lr_drop_every must be >= 1 (got {self.lr_drop_every})")
        if not self.weight_decay >= 0:
            problems.append(f"weight_decay must be >= 0 (got {self.weight_decay})")
        if self.total_iters < 1:
            problems.append(f"total_iters must be >= 1 (got {self.total_iters})")
        if not 0 <= self.momentum < 1:
            problems.append(f"momentum must be in [0, 1) (got {self.momentum})")
        if self.batch_size < 1:
            problems.append(f"batch_size must be >= 1 (got {self.batch_size})")
        if not 0 <= self.dropout_rate < 1:
            problems.append(f"dropout_rate must be in [0, 1) (got {self.dropout_rate})")
        if problems:
            raise InvalidInputError("Invalid training config: " + "; ".join(problems))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _coerce(key: str, value: Any, default: Any) -> Any:
    """Check a YAML value against the type of the field's default."""
    if isinstance(default, float):
        # YAML 1.1 reads exponents without a dot, such as 1e-8, as strings
        if isinstance(value, str):
            try:
                value = float(value)
            except ValueError:
                pass
        if not (_is_int(value) or isinstance(value, float)) or not math.isfinite(value):
            raise InvalidInputError(f"{key} must be a finite number (got {value!r})")
        return float(value)
    if _is_int(default) and not _is_int(value):
        raise InvalidInputError(f"{key} must be an integer (got {value!r})")
    return value


def _train_from_dict(data: Any, base: TrainConfig) -> TrainConfig:
    if not isinstance(data, dict):
        raise InvalidInputError("'train' must be a mapping")
    defaults = {f.name: f.default for f in fields(TrainConfig)}
    unknown = sorted(str(k) for k in data if k not in defaults)
    if unknown:
        raise InvalidInputError(f"Unknown training option(s): {', '.join(unknown)}")
    return replace(base, **{k: _coerce(f"train.{k}", v, defaults[k]) for k, v in data.items()})


# Desk-scale recipe: the full schedule with a larger first step and a shorter run.
DESK_TRAIN = TrainConfig(initial_lr=0.1, total_iters=3000)


@dataclass(frozen=True)
class PipelineParams:
    """Every tunable value of an evaluation run.

    Designed to live as a YAML file next to a benchmark so a run can be reproduced from
    ``(manifest, params)`` alone. Unknown YAML fields are preserved in ``extras``.

    Usage::

        params = PipelineParams.from_file("params.yaml")
        params = PipelineParams.preset("desk").with_overrides(lambda1=0.5)
    """

    lambda_: float = 0.01
    lambda1: float = 0.35
    sparsity: int = 50
    residual_tol: float = 1e-8
    levels: int = 3
    coeffs: int = 4
    codebook_size: int = 2000
    kmeans_max_iters: int = 100
    kmeans_tol: float = 1e-6
    widths: tuple[int, int, int, int] = FULL_WIDTHS
    train: TrainConfig = field(default_factory=TrainConfig)
    seed: int = 0
    extras: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def preset(cls, name: str) -> PipelineParams:
        """Return the ``full`` or ``desk`` preset."""
        if name == "full":
            return cls()
        if name == "desk":
            return cls(codebook_size=32, widths=DESK_WIDTHS, train=DESK_TRAIN)
        raise InvalidInputError(f"Unknown preset '{name}'. Allowed values: full, desk.")

    @property
    def feature_length(self) -> int:
        return sum(self.widths)

    def with_overrides(self, **overrides: Any) -> PipelineParams:
        """Return a copy with non-None overrides applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if "widths" in changes:
            changes["widths"] = tuple(int(w) for w in changes["widths"])
        return replace(self, **changes)

    def validate(self) -> None:
        problems = []
        if not self.lambda_ > 0:
            problems.append(f"lambda must be > 0 (got {self.lambda_})")
        if not 0 <= self.lambda1 <= 1:
            problems.append(f"lambda1 must be in [0, 1] (got {self.lambda1})")
        if self.sparsity < 1:
            problems.append(f"sparsity must be >= 1 (got {self.sparsity})")
        if self.residual_tol < 0:
            problems.append(f"residual_tol must be >= 0 (got {self.residual_tol})")
        if self.levels < 1 or self.coeffs < 1:
            problems.append("levels and coeffs must be >= 1")
        if self.codebook_size < 1:
            problems.append(f"codebook_size must be >= 1 (got {self.codebook_size})")
        if self.kmeans_max_iters < 1 or not self.kmeans_tol > 0:
            problems.append("kmeans_max_iters must be >= 1 and kmeans_tol > 0")
        if len(self.widths) != 4 or any(w < 1 for w in self.widths):
            problems.append(f"widths must be four positive integers (got {self.widths})")
        elif self.widths[3] != self.codebook_size:
            problems.append(
                f"last layer width {self.widths[3]} must equal codebook_size "
                f"{self.codebook_size} (the network regresses canonical-view histograms)"
            )
        if self.seed < 0:
            problems.append(f"seed must be >= 0 (got {self.seed})")
        if problems:
            raise InvalidInputError("Invalid parameters: " + "; ".join(problems))
        self.train.validate()

    # Known field names (for separating known from extras on YAML load)
    @classmethod
    def _known_fields(cls) -> frozenset[str]:
        return frozenset(f.name for f in fields(cls) if f.name != "extras")

    @classmethod
    def from_file(cls, path: str | Path, base: PipelineParams | None = None) -> PipelineParams:
        """Load params from a YAML file, layered over ``base`` (default: full preset)."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (yaml.YAMLError, UnicodeDecodeError) as exc:
            raise InvalidInputError(f"Config file {path} is not valid YAML: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidInputError(f"Config file must contain a YAML mapping: {path}")
        return cls._from_dict(data, base or cls())

    @classmethod
    def _from_dict(cls, data: dict[str, Any], base: PipelineParams) -> PipelineParams:
        known: dict[str, Any] = {}
        extras: dict[str, Any] = dict(base.extras)
        defaults = {f.name: f.default for f in fields(cls)}
        for key, value in data.items():
            # YAML users write "lambda"; the attribute avoids the keyword.
            name = "lambda_" if key == "lambda" else key
            if name in ("train", "widths"):
                known[name] = value
            elif name in cls._known_fields():
                known[name] = _coerce(key, value, defaults[name])
            else:
                extras[key] = value
        if "train" in known:
            known["train"] = _train_from_dict(known["train"] or {}, base.train)
        if "widths" in known:
            widths = known["widths"]
            if not isinstance(widths, list) or not all(_is_int(w) for w in widths):
                raise InvalidInputError(f"widths must be a list of integers (got {widths!r})")
            known["widths"] = tuple(widths)
        return replace(base, extras=extras, **known)

    def to_dict(self) -> dict[str, Any]:
        """Serialize to a plain dict (known fields + extras merged at top level)."""
        data: dict[str, Any] = {
            "lambda": self.lambda_,
            "lambda1": self.lambda1,
            "sparsity": self.sparsity,
            "residual_tol": self.residual_tol,
            "levels": self.levels,
            "coeffs": self.coeffs,
            "codebook_size": self.codebook_size,
            "kmeans_max_iters": self.kmeans_max_iters,
            "kmeans_tol": self.kmeans_tol,
            "widths": list(self.widths),
            "train": asdict(self.train),
            "seed": self.seed,
        }
        data.update(self.extras)
        return data

    def to_file(self, path: str | Path) -> None:
        """Save params to a YAML file."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)
