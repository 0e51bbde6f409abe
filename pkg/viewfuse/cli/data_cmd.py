"""`synth` command: generate a seeded synthetic benchmark."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer

from ..synth import MANIFEST_NAME, SynthConfig, generate_dataset
from .formatting import _markup, configure_logging, exit_on_error
from .options import VerboseOption
from .state import THEME, app, console

_DEFAULTS = SynthConfig()


@app.command()
def synth(
    out: Annotated[Path, typer.Option("--out", "-o", help="Output directory")],
    seed: Annotated[int, typer.Option("--seed", help="Dataset seed")] = _DEFAULTS.seed,
    classes: Annotated[int, typer.Option("--classes", help="Action classes")] = _DEFAULTS.classes,
    views: Annotated[int, typer.Option("--views", help="Camera views")] = _DEFAULTS.views,
    samples: Annotated[
        int, typer.Option("--samples", help="Samples per class and view")
    ] = _DEFAULTS.samples,
    noise: Annotated[float, typer.Option("--noise", help="Noise sigma")] = _DEFAULTS.noise,
    separation: Annotated[
        float, typer.Option("--separation", help="Class prototype scale")
    ] = _DEFAULTS.separation,
    view_spread: Annotated[
        float, typer.Option("--view-spread", help="How far views rotate away from view 0")
    ] = _DEFAULTS.view_spread,
    verbose: VerboseOption = 0,
) -> None:
    """Generate a synthetic multi-view benchmark and its manifest."""
    configure_logging(verbose)
    cfg = SynthConfig(
        classes=classes,
        views=views,
        samples=samples,
        noise=noise,
        separation=separation,
        view_spread=view_spread,
        seed=seed,
    )
    with exit_on_error():
        manifest = generate_dataset(cfg, out)
    console.print(
        _markup(
            f"Wrote {len(manifest.samples)} samples and {len(manifest.transfer)} transfer pairs "
            f"to {out / MANIFEST_NAME}",
            THEME.success,
        )
    )
