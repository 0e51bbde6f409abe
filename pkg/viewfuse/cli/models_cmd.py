"""Model training and feature export: `train-codebook`, `train-viewnet`, `encode`."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer

from ..data.manifest import load_manifest
from ..data.matrix import write_labels, write_matrix
from ..eval.bank import FeatureBank, fit_codebook, train_rgb_models
from ..eval.runner import build_dictionary
from ..features.codebook import load_codebook, save_codebook
from ..features.fusion import Modality
from ..features.viewnet import load_params, save_params
from .formatting import _markup, configure_logging, exit_on_error
from .options import (
    CodebookSizeOption,
    ConfigOption,
    ManifestOption,
    PresetOption,
    SeedOption,
    VerboseOption,
    WidthsOption,
    resolve_params,
)
from .state import THEME, app, console

CodebookPathOption = Annotated[
    Path | None, typer.Option("--codebook", help="Trained codebook (matrix file)")
]


@app.command("train-codebook")
def train_codebook(
    manifest: ManifestOption,
    out: Annotated[Path, typer.Option("--out", "-o", help="Codebook output file")],
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    codebook_size: CodebookSizeOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Fit the trajectory codebook with k-means."""
    configure_logging(verbose)
    with exit_on_error():
        params = resolve_params(
            config, preset, seed=seed, codebook_size=codebook_size, widths=widths
        )
        codebook = fit_codebook(load_manifest(manifest), params)
        save_codebook(codebook, out)
    console.print(
        _markup(
            f"Codebook of {codebook.size} words written to {out} "
            f"(objective {codebook.objective_trace[-1]:.6g})",
            THEME.success,
        )
    )


@app.command("train-viewnet")
def train_viewnet(
    manifest: ManifestOption,
    codebook: Annotated[Path, typer.Option("--codebook", help="Trained codebook")],
    out: Annotated[Path, typer.Option("--out", "-o", help="Network parameter output file")],
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Train the view-transfer network on the manifest's transfer corpus."""
    configure_logging(verbose)
    with exit_on_error():
        words = load_codebook(codebook)
        params = resolve_params(
            config, preset, seed=seed, codebook_size=words.size, widths=widths
        )
        models = train_rgb_models(load_manifest(manifest), params, codebook=words)
        save_params(models.network, out)
    console.print(
        _markup(
            f"Network {models.network.input_dim}->{models.network.widths} written to {out}",
            THEME.success,
        )
    )


@app.command()
def encode(
    manifest: ManifestOption,
    out: Annotated[Path, typer.Option("--out", "-o", help="Output directory")],
    modality: Annotated[
        Modality, typer.Option("--modality", help="Feature blocks to encode")
    ] = Modality.FUSED,
    codebook: CodebookPathOption = None,
    viewnet: Annotated[
        Path | None, typer.Option("--viewnet", help="Trained network parameters")
    ] = None,
    config: ConfigOption = None,
    preset: PresetOption = "full",
    seed: SeedOption = None,
    codebook_size: CodebookSizeOption = None,
    widths: WidthsOption = None,
    verbose: VerboseOption = 0,
) -> None:
    """Encode every sample and write the feature blocks, the dictionary and the labels."""
    configure_logging(verbose)
    with exit_on_error():
        params = resolve_params(
            config, preset, seed=seed, codebook_size=codebook_size, widths=widths
        )
        dataset = load_manifest(manifest)
        bank = FeatureBank(
            dataset,
            params,
            codebook=load_codebook(codebook) if codebook else None,
            network=load_params(viewnet) if viewnet else None,
        )
        records = dataset.samples
        used = (("depth", modality.uses_depth), ("rgb", modality.uses_rgb))
        names = [name for name, wanted in used if wanted]
        for name, block in zip(names, bank.blocks(records, modality), strict=True):
            write_matrix(block, out / f"{name}.txt")
        write_matrix(build_dictionary(bank, records, modality).X, out / "dictionary.txt")
        write_labels([r.label for r in records], out / "labels.txt")
    console.print(
        _markup(f"Encoded {len(records)} samples ({modality.value}) into {out}", THEME.success)
    )
