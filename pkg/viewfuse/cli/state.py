"""Shared CLI state: console, app, theme, settings."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import typer
from dotenv import load_dotenv
from rich.console import Console

from ..core.errors import InvalidInputError

load_dotenv()


@dataclass(frozen=True)
class CliTheme:
    """Semantic Rich color tokens for CLI output."""

    primary: str = "#E6EDF3"
    secondary: str = "#56B6C2"
    muted: str = "#7F848E"
    accent: str = "#61AFEF"
    success: str = "#98C379"
    warning: str = "#E5C07B"
    error: str = "#E06C75"


THEME = CliTheme()


@dataclass
class Settings:
    """Defaults taken from the environment at startup."""

    parallel_env: str = field(default_factory=lambda: os.getenv("VIEWFUSE_PARALLEL", "1"))
    log_level: str = field(
        default_factory=lambda: os.getenv("VIEWFUSE_LOG_LEVEL", "WARNING").upper()
    )

    @property
    def parallel(self) -> int:
        try:
            value = int(self.parallel_env)
        except ValueError:
            value = 0
        if value < 1:
            raise InvalidInputError(
                f"VIEWFUSE_PARALLEL must be a positive integer (got {self.parallel_env!r})"
            )
        return value


settings = Settings()

# Rich console for all human-facing output
console = Console()

app = typer.Typer(
    name="viewfuse",
    help="Cross-view action recognition from fused depth and RGB trajectory features.",
    epilog=(
        "Examples:\n"
        "  viewfuse synth --out bench\n"
        "  viewfuse run-protocol --manifest bench/manifest.json --preset desk --out report.json\n"
        "  viewfuse run-split --manifest bench/manifest.json --preset desk "
        "--train-views 0,1 --test-view 2 --modality depth\n"
        "  viewfuse sweep-lambda1 --manifest bench/manifest.json --preset desk --values 0,0.5,1"
    ),
    add_completion=False,
)
