"""Tests for the synthetic multi-view benchmark generator."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from viewfuse.core.errors import InvalidInputError
from viewfuse.core.rng import Stream, make_rng
from viewfuse.data.manifest import load_manifest
from viewfuse.data.matrix import read_matrix
from viewfuse.synth import MANIFEST_NAME, SynthConfig, generate_dataset, make_view_transform

SMALL = SynthConfig(classes=2, views=2, samples=2, transfer_per_class=1)


def _tree(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()
    }


class TestViewTransform:
    def test_view_zero_is_identity(self):
        np.testing.assert_array_equal(make_view_transform(0, 6, seed=7), np.eye(6))

    @pytest.mark.parametrize("view", [1, 2, 5])
    @pytest.mark.parametrize("dim", [1, 6, 32])
    def test_orthogonal(self, view: int, dim: int):
        q = make_view_transform(view, dim, seed=7)
        np.testing.assert_allclose(q.T @ q, np.eye(dim), atol=1e-10)

    def test_seeded(self):
        a = make_view_transform(2, 8, seed=3)
        np.testing.assert_array_equal(a, make_view_transform(2, 8, seed=3))
        assert not np.allclose(a, make_view_transform(3, 8, seed=3))
        assert not np.allclose(a, make_view_transform(2, 8, seed=4))

    def test_zero_spread_is_identity(self):
        np.testing.assert_allclose(make_view_transform(3, 5, seed=1, spread=0.0), np.eye(5))

    def test_spread_controls_distance(self):
        near = make_view_transform(1, 16, seed=0, spread=0.1)
        far = make_view_transform(1, 16, seed=0, spread=1.0)
        assert np.linalg.norm(near - np.eye(16)) < np.linalg.norm(far - np.eye(16))

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            make_view_transform(1, 0, seed=0)
        with pytest.raises(InvalidInputError):
            make_view_transform(-1, 4, seed=0)


def test_sample_count(tmp_path: Path):
    manifest = generate_dataset(SynthConfig(classes=5, views=3, samples=8), tmp_path)
    assert len(manifest.samples) == 120
    assert manifest.views == [0, 1, 2]
    assert len(manifest.transfer) == 5 * 8 * 3
    record = manifest.samples[0]
    assert record.id == "c00_v0_s00"
    assert manifest.read_depth(record).shape == (32, 16)
    assert manifest.read_trajectories(record).shape == (40, 6)


def test_manifest_on_disk_matches(tmp_path: Path):
    manifest = generate_dataset(SMALL, tmp_path)
    assert load_manifest(tmp_path / MANIFEST_NAME) == manifest


def test_byte_identical_output(tmp_path: Path):
    generate_dataset(SMALL, tmp_path / "a")
    generate_dataset(SMALL, tmp_path / "b")
    first, second = _tree(tmp_path / "a"), _tree(tmp_path / "b")
    assert first == second
    assert MANIFEST_NAME in first


def test_seed_changes_output(tmp_path: Path):
    generate_dataset(SMALL, tmp_path / "a")
    generate_dataset(SynthConfig(classes=2, views=2, samples=2, seed=8), tmp_path / "b")
    first = read_matrix(tmp_path / "a" / "depth" / "c00_v0_s00.txt")
    second = read_matrix(tmp_path / "b" / "depth" / "c00_v0_s00.txt")
    assert not np.allclose(first, second)


def test_noise_free_cell_is_constant(tmp_path: Path):
    cfg = SynthConfig(classes=2, views=2, samples=3, noise=0.0, transfer_per_class=1)
    manifest = generate_dataset(cfg, tmp_path)
    cell = [s for s in manifest.samples if s.label == 1 and s.view == 1]
    assert len(cell) == 3
    reference = manifest.read_depth(cell[0])
    for record in cell[1:]:
        np.testing.assert_array_equal(manifest.read_depth(record), reference)
        np.testing.assert_array_equal(
            manifest.read_trajectories(record), manifest.read_trajectories(cell[0])
        )


def test_canonical_depth_is_modulated_prototype(tmp_path: Path):
    cfg = SynthConfig(classes=1, views=1, samples=1, noise=0.0, transfer_per_class=1)
    manifest = generate_dataset(cfg, tmp_path)
    prototype = cfg.separation * make_rng(cfg.seed, Stream.PROTOTYPE, 0).standard_normal(
        cfg.depth_dim
    )
    depth = manifest.read_depth(manifest.samples[0])
    assert depth.shape == (cfg.depth_dim, cfg.frames)
    # rank one: every frame is the prototype scaled by a modulation in [0.5, 1.5]
    modulation = prototype @ depth / (prototype @ prototype)
    np.testing.assert_allclose(depth, np.outer(prototype, modulation), atol=1e-10)
    assert modulation.min() >= 0.5 - 1e-12
    assert modulation.max() <= 1.5 + 1e-12


def test_transfer_pairs_share_motion(tmp_path: Path):
    manifest = generate_dataset(SMALL, tmp_path)
    q = make_view_transform(1, SMALL.trajectory_dim, SMALL.seed, SMALL.view_spread)
    for record in manifest.transfer:
        specific, canonical = manifest.read_transfer(record)
        if record.view == 0:
            np.testing.assert_array_equal(specific, canonical)
        else:
            np.testing.assert_allclose(specific, canonical @ q.T, atol=1e-12)


def test_subjects_follow_sample_index(tmp_path: Path):
    manifest = generate_dataset(SMALL, tmp_path)
    assert {s.subject for s in manifest.samples} == {0, 1}


@pytest.mark.parametrize(
    "overrides",
    [{"classes": 0}, {"noise": -0.1}, {"separation": 0.0}, {"view_spread": -1.0}, {"seed": -1}],
)
def test_invalid_config(tmp_path: Path, overrides):
    with pytest.raises(InvalidInputError, match="Invalid synthetic config"):
        generate_dataset(SynthConfig(**overrides), tmp_path)
