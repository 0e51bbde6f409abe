"""Evaluation commands: `run-split`, `run-protocol`, `sweep-lambda1`."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from ..core.config import PipelineParams
from ..data.manifest import DatasetManifest, load_manifest
from ..data.report import EvaluationReport, write_report
from ..eval.bank import FeatureBank
from ..eval.protocol import Protocol, protocol_splits
from ..eval.runner import MODALITIES, SplitResult, run_protocol, run_split, sweep_lambda1
from ..features.codebook import load_codebook
from ..features.fusion import Modality
from ..features.viewnet import load_params
from .formatting import _markup, configure_logging, exit_on_error, print_summary, print_sweep
from .options import (
    CodebookSizeOption,
    ConfigOption,
    Lambda1Option,
    LambdaOption,
    ManifestOption,
    PresetOption,
    SeedOption,
    SparsityOption,
    VerboseOption,
    WidthsOption,
    parse_float_list,
    parse_int_list,
    resolve_params,
)
from .state import THEME, app, console, settings

ReportOption = Annotated[
    Path | None, typer.Option("--out", "-o", help="Write the JSON report here")
]
CodebookOption = Annotated[
    Path | None, typer.Option("--codebook", help="Trained codebook instead of training one")
]
ViewnetOption = Annotated[
    Path | None,
    typer.Option("--viewnet", help="Trained network instead of training one (needs --codebook)"),
]
ProtocolOption = Annotated[
    Protocol, typer.Option("--protocol", help="Evaluation protocol")
]
ParallelOption = Annotated[
    int | None,
    typer.Option("--parallel", "-p", help="Splits evaluated concurrently [env: VIEWFUSE_PARALLEL]"),
]

DEFAULT_SWEEP = "0,0.1,0.2,0.3,0.35,0.4,0.5,0.6,0.7,0.8,0.9,1"


def _feature_bank(
    manifest: DatasetManifest,
    params: PipelineParams,
    codebook: Path | None,
    viewnet: Path | None,
) -> FeatureBank:
    return FeatureBank(
        manifest,
        params,
        codebook=load_codebook(codebook) if codebook else None,
        network=load_params(viewnet) if viewnet else None,
    )


@app.command("run-split")
def run_split_cmd(
    manifest: ManifestOption,
    train_views: Annotated[str, typer.Option("--train-views", help="Training views, e.g. 0,1")],
    test_view: Annotated[int, typer.Option("--test-view", help="Test view")],
    modality: Annotated[
        Modality, typer.Option("--modality", help="Feature blocks in the dictionary")
    ] = Modality.FUSED,
    out: ReportOption = None,
    codebook: CodebookOption = None,
    viewnet: ViewnetOption = None,
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    lambda_: LambdaOption = None,
    lambda1: Lambda1Option = None,
    sparsity: SparsityOption = None,
    codebook_size: CodebookSizeOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Train on some views and classify the samples of another."""
    configure_logging(verbose)
    with exit_on_error():
        params = resolve_params(
            config,
            preset,
            seed=seed,
            lambda_=lambda_,
            lambda1=lambda1,
            sparsity=sparsity,
            codebook_size=codebook_size,
            widths=widths,
        )
        views = parse_int_list("--train-views", train_views)
        dataset = load_manifest(manifest)
        bank = _feature_bank(dataset, params, codebook, viewnet)
        result = run_split(dataset, views, test_view, params, modality, bank=bank)
        report = EvaluationReport(
            protocol="split",
            records=[result.to_record()],
            mean_accuracy={modality.value: result.accuracy},
            confusion_matrices={modality.value: result.confusion.tolist()},
            params=params.to_dict(),
        )
        if out is not None:
            write_report(report, out)
    print_summary(report)
    console.print(
        _markup(
            f"{result.split.name} [{modality.value}]: {int(result.confusion.trace())}"
            f"/{result.truths.size} correct",
            THEME.success,
        )
    )


@app.command("run-protocol")
def run_protocol_cmd(
    manifest: ManifestOption,
    out: ReportOption = None,
    protocol: ProtocolOption = Protocol.CROSS_VIEW,
    parallel: ParallelOption = None,
    codebook: CodebookOption = None,
    viewnet: ViewnetOption = None,
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    lambda_: LambdaOption = None,
    lambda1: Lambda1Option = None,
    sparsity: SparsityOption = None,
    codebook_size: CodebookSizeOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Evaluate every split of a protocol for depth, RGB and fused features."""
    configure_logging(verbose)
    with exit_on_error():
        workers = parallel or settings.parallel
        params = resolve_params(
            config,
            preset,
            seed=seed,
            lambda_=lambda_,
            lambda1=lambda1,
            sparsity=sparsity,
            codebook_size=codebook_size,
            widths=widths,
        )
        dataset = load_manifest(manifest)
        total = len(protocol_splits(dataset, protocol)) * len(MODALITIES)
        bank = _feature_bank(dataset, params, codebook, viewnet)

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
            TextColumn("({task.completed}/{task.total})"),
            console=console,
        ) as progress:
            task_id = progress.add_task(f"Running {protocol.value}...", total=total)

            def advance(result: SplitResult) -> None:
                progress.update(
                    task_id,
                    advance=1,
                    description=f"{result.split.name} [{result.modality.value}]",
                )

            report = run_protocol(
                dataset,
                params,
                protocol=protocol,
                parallel=workers,
                bank=bank,
                on_result=advance,
            )
        if out is not None:
            write_report(report, out)
    print_summary(report)
    if out is not None:
        console.print(_markup(f"Report written to {out}", THEME.muted))


@app.command("sweep-lambda1")
def sweep_lambda1_cmd(
    manifest: ManifestOption,
    values: Annotated[
        str, typer.Option("--values", help="Comma-separated lambda1 values in [0, 1]")
    ] = DEFAULT_SWEEP,
    out: ReportOption = None,
    protocol: ProtocolOption = Protocol.CROSS_VIEW,
    parallel: ParallelOption = None,
    codebook: CodebookOption = None,
    viewnet: ViewnetOption = None,
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    lambda_: LambdaOption = None,
    sparsity: SparsityOption = None,
    codebook_size: CodebookSizeOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Mean fused accuracy as a function of the sparse/dense combination weight."""
    configure_logging(verbose)
    with exit_on_error():
        workers = parallel or settings.parallel
        params = resolve_params(
            config,
            preset,
            seed=seed,
            lambda_=lambda_,
            sparsity=sparsity,
            codebook_size=codebook_size,
            widths=widths,
        )
        weights = parse_float_list("--values", values)
        dataset = load_manifest(manifest)
        report = sweep_lambda1(
            dataset,
            params,
            weights,
            protocol=protocol,
            parallel=workers,
            bank=_feature_bank(dataset, params, codebook, viewnet),
        )
        if out is not None:
            write_report(report, out)
    print_sweep(report)
    console.print(_markup(f"Best lambda1: {report.best_value:g}", THEME.success))
