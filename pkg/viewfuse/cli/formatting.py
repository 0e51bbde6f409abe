"""Console helpers: markup, logging setup, error reporting, result tables."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from contextlib import contextmanager

import typer
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from ..core.errors import InvalidInputError
from ..data.report import EvaluationReport, SweepReport
from .state import THEME, console, settings

EXIT_INVALID_INPUT = 2
EXIT_IO_FAILURE = 1


def _markup(text: str, color: str) -> str:
    """Wrap text in Rich markup with the given color, escaping special chars."""
    return f"[{color}]{escape(text)}[/{color}]"


def configure_logging(verbose: int) -> None:
    """Route package logs through the shared console; -v is INFO, -vv is DEBUG."""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(settings.log_level)
        if not isinstance(level, int):
            level = logging.WARNING
    logger = logging.getLogger("viewfuse")
    logger.handlers[:] = [RichHandler(console=console, show_path=False, markup=False)]
    logger.setLevel(level)
    logger.propagate = False


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Print pipeline errors in red and exit 2 (invalid input) or 1 (I/O failure)."""
    try:
        yield
    except InvalidInputError as exc:
        console.print(_markup(str(exc), THEME.error))
        raise typer.Exit(EXIT_INVALID_INPUT) from exc
    except OSError as exc:
        console.print(_markup(f"I/O error: {exc}", THEME.error))
        raise typer.Exit(EXIT_IO_FAILURE) from exc


def _percent(value: float) -> str:
    return f"{100.0 * value:.1f}%"


def summary_table(report: EvaluationReport) -> Table:
    """Per-split accuracy by modality, with the mean as the last row."""
    modalities = list(report.mean_accuracy)
    table = Table(show_header=True, header_style=THEME.secondary, title=report.protocol)
    table.add_column("Split", style=THEME.accent)
    for modality in modalities:
        table.add_column(modality, justify="right")
    if report.error_reduction:
        table.add_column("Error reduction", justify="right", style=THEME.muted)

    splits: dict[str, dict[str, float]] = {}
    for record in report.records:
        splits.setdefault(record.split, {})[record.modality] = record.accuracy
    for split, accuracies in splits.items():
        row = [split, *(_percent(accuracies[m]) if m in accuracies else "-" for m in modalities)]
        if report.error_reduction:
            row.append(_percent(report.error_reduction.get(split, 0.0)))
        table.add_row(*row)

    mean_row = ["Mean", *(_percent(report.mean_accuracy[m]) for m in modalities)]
    if report.error_reduction:
        mean_row.append("")
    table.add_row(*mean_row, style="bold")
    return table


def print_summary(report: EvaluationReport) -> None:
    console.print(summary_table(report))
    if report.fusion_gain is not None:
        color = THEME.success if report.fusion_gain >= 0 else THEME.warning
        console.print(
            _markup(
                f"Fused vs best single modality: {report.fusion_gain * 100:+.1f} points", color
            )
        )


def print_sweep(report: SweepReport) -> None:
    table = Table(show_header=True, header_style=THEME.secondary, title="lambda1 sweep")
    table.add_column("lambda1", justify="right", style=THEME.accent)
    table.add_column("Mean fused accuracy", justify="right")
    best = report.best_value
    for value, accuracy in zip(report.values, report.mean_accuracy, strict=True):
        style = f"bold {THEME.success}" if value == best else None
        table.add_row(f"{value:g}", _percent(accuracy), style=style)
    console.print(table)
