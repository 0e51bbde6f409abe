"""Option types shared by the subcommands and flag-to-parameter resolution."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer

from ..core.config import PipelineParams
from .errors import InvalidListError

ManifestOption = Annotated[
    Path, typer.Option("--manifest", "-m", help="Dataset manifest (JSON)")
]
ConfigOption = Annotated[
    Path | None, typer.Option("--config", "-c", help="YAML parameter file")
]
PresetOption = Annotated[
    str, typer.Option("--preset", help="Parameter preset: full or desk")
]
SeedOption = Annotated[
    int | None, typer.Option("--seed", help="Master seed for every stochastic step")
]
LambdaOption = Annotated[
    float | None, typer.Option("--lambda", help="Ridge regularization (default 0.01)")
]
Lambda1Option = Annotated[
    float | None,
    typer.Option("--lambda1", help="Weight of the sparse representation (default 0.35)"),
]
SparsityOption = Annotated[
    int | None, typer.Option("--sparsity", help="OMP sparsity k (default 50)")
]
CodebookSizeOption = Annotated[
    int | None, typer.Option("--codebook-size", help="Codebook size K (default 2000)")
]
WidthsOption = Annotated[
    str | None, typer.Option("--widths", help="Network layer widths a,b,c,d")
]
VerboseOption = Annotated[
    int, typer.Option("--verbose", "-v", count=True, help="-v for INFO logs, -vv for DEBUG")
]


def parse_int_list(option: str, value: str, length: int | None = None) -> tuple[int, ...]:
    """Parse ``"0,1"`` into ``(0, 1)``, optionally requiring an exact length."""
    expected = "comma-separated integers"
    if length is not None:
        expected = f"{length} {expected}"
    try:
        items = tuple(int(part) for part in value.split(","))
    except ValueError as exc:
        raise InvalidListError(option, value, expected) from exc
    if length is not None and len(items) != length:
        raise InvalidListError(option, value, expected)
    return items


def parse_float_list(option: str, value: str) -> list[float]:
    try:
        return [float(part) for part in value.split(",")]
    except ValueError as exc:
        raise InvalidListError(option, value, "comma-separated numbers") from exc


def resolve_params(
    config: Path | None,
    preset: str,
    *,
    seed: int | None = None,
    lambda_: float | None = None,
    lambda1: float | None = None,
    sparsity: int | None = None,
    codebook_size: int | None = None,
    widths: str | None = None,
) -> PipelineParams:
    """Explicit flags override the config file, which overrides the preset.

    Without ``--widths``, the last layer follows ``--codebook-size``.
    """
    params = PipelineParams.preset(preset)
    if config is not None:
        params = PipelineParams.from_file(config, base=params)
    layer_widths = parse_int_list("--widths", widths, 4) if widths is not None else None
    if layer_widths is None and codebook_size is not None:
        layer_widths = (*params.widths[:3], codebook_size)
    params = params.with_overrides(
        seed=seed,
        lambda_=lambda_,
        lambda1=lambda1,
        sparsity=sparsity,
        codebook_size=codebook_size,
        widths=layer_widths,
    )
    params.validate()
    return params
