from __future__ import annotations

from pathlib import Path

import pytest

from viewfuse.core.config import PipelineParams, TrainConfig
from viewfuse.data.manifest import DatasetManifest, load_manifest
from viewfuse.synth import MANIFEST_NAME, SynthConfig, generate_dataset

# Short training run so tests exercise the whole RGB path quickly.
QUICK_TRAIN = TrainConfig(initial_lr=0.1, total_iters=200, batch_size=16)


@pytest.fixture
def quick_params() -> PipelineParams:
    return PipelineParams.preset("desk").with_overrides(train=QUICK_TRAIN)


@pytest.fixture(scope="session")
def clean_bench_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """Noise-free benchmark whose views coincide: every split is perfectly separable."""
    cfg = SynthConfig(
        classes=3, views=4, samples=2, noise=0.0, view_spread=0.0, transfer_per_class=2
    )
    root = tmp_path_factory.mktemp("clean")
    generate_dataset(cfg, root)
    return root


@pytest.fixture
def clean_bench(clean_bench_dir: Path) -> DatasetManifest:
    # fresh manifest per test so access logs start empty
    return load_manifest(clean_bench_dir / MANIFEST_NAME)


@pytest.fixture(scope="session")
def noisy_bench_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    cfg = SynthConfig(classes=3, views=3, samples=3, transfer_per_class=2)
    root = tmp_path_factory.mktemp("noisy")
    generate_dataset(cfg, root)
    return root


@pytest.fixture
def noisy_bench(noisy_bench_dir: Path) -> DatasetManifest:
    return load_manifest(noisy_bench_dir / MANIFEST_NAME)


@pytest.fixture(scope="session")
def default_bench_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    root = tmp_path_factory.mktemp("default")
    generate_dataset(SynthConfig(), root)
    return root
