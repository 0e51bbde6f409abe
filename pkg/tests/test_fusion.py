"""Tests for heterogeneous feature fusion."""

from __future__ import annotations

import numpy as np
import pytest

from viewfuse.core.config import FULL_WIDTHS
from viewfuse.core.errors import InvalidInputError
from viewfuse.features.fusion import (
    Modality,
    ModalityFeatureSet,
    class_matrix,
    fuse,
    fuse_blocks,
    fuse_single,
    rescale_columns,
    zscore_columns,
)
from viewfuse.features.pyramid import encode_depth


class TestZscore:
    def test_example(self):
        np.testing.assert_allclose(
            zscore_columns([1.0, 2.0, 3.0])[:, 0], [-1.224745, 0.0, 1.224745], atol=1e-6
        )

    def test_constant_column(self):
        np.testing.assert_array_equal(zscore_columns([5.0, 5.0, 5.0])[:, 0], 0.0)

    def test_rounding_noise_is_constant(self):
        np.testing.assert_array_equal(zscore_columns([0.1, 0.1, 0.1])[:, 0], 0.0)

    def test_tiny_spread_is_not_constant(self):
        np.testing.assert_allclose(
            zscore_columns([0.0, 1e-13, 2e-13])[:, 0], [-1.224745, 0.0, 1.224745], atol=1e-6
        )

    def test_unit_statistics(self):
        out = zscore_columns(np.random.default_rng(0).random((9, 6)) * 40 - 7)
        np.testing.assert_allclose(out.mean(axis=0), 0.0, atol=1e-10)
        np.testing.assert_allclose(out.std(axis=0), 1.0, atol=1e-10)

    def test_needs_two_rows(self):
        with pytest.raises(InvalidInputError):
            zscore_columns([[1.0, 2.0]])


class TestRescale:
    def test_example(self):
        np.testing.assert_allclose(rescale_columns([-1.0, 0.0, 1.0])[:, 0], [0.0, 0.5, 1.0])

    def test_constant_column(self):
        np.testing.assert_array_equal(rescale_columns([3.0, 3.0])[:, 0], 0.5)

    def test_range(self):
        out = rescale_columns(np.random.default_rng(1).standard_normal((7, 5)))
        assert out.min() >= 0.0
        assert out.max() <= 1.0


def test_class_matrix():
    np.testing.assert_array_equal(class_matrix([0, 1, 1], 2), [[1, 0, 0], [0, 1, 1]])
    with pytest.raises(InvalidInputError):
        class_matrix([0, 2], 2)


class TestFuse:
    def test_shapes(self):
        rng = np.random.default_rng(2)
        dictionary = fuse(rng.random((3, 2)), rng.random((2, 2)), [0, 1], 2)
        assert dictionary.X.shape == (5, 2)
        assert dictionary.block_dims == (3, 2)
        assert dictionary.num_classes == 2
        assert dictionary.size == 2

    def test_columns_are_unit_norm(self):
        rng = np.random.default_rng(3)
        depth = ModalityFeatureSet(rng.standard_normal((40, 12)), Modality.DEPTH)
        rgb = ModalityFeatureSet(rng.random((9, 12)), Modality.RGB)
        dictionary = fuse(depth, rgb, rng.integers(0, 3, size=12), 3)
        np.testing.assert_allclose(np.linalg.norm(dictionary.X, axis=0), 1.0, atol=1e-12)

    def test_sample_count_mismatch(self):
        with pytest.raises(InvalidInputError, match="sample count"):
            fuse(np.ones((3, 2)), np.ones((2, 3)), [0, 1], 2)

    def test_single_block(self):
        rng = np.random.default_rng(4)
        dictionary = fuse_blocks([rng.random((6, 4))], [0, 0, 1, 1], 2)
        assert dictionary.X.shape == (6, 4)
        np.testing.assert_allclose(np.linalg.norm(dictionary.X, axis=0), 1.0, atol=1e-12)


class TestFuseSingle:
    def test_matches_dictionary_columns(self):
        rng = np.random.default_rng(5)
        depth, rgb = rng.standard_normal((20, 6)), rng.random((8, 6))
        dictionary = fuse(depth, rgb, [0, 1, 2, 0, 1, 2], 3)
        for j in range(6):
            np.testing.assert_allclose(
                fuse_single(depth[:, j], rgb[:, j], block_dims=dictionary.block_dims),
                dictionary.X[:, j],
                rtol=0,
                atol=1e-12,
            )

    def test_constant_depth_block_is_half(self):
        y = fuse_single(np.full(4, 7.0), np.array([0.0, 1.0, 2.0]))
        assert y.shape == (7,)
        assert np.linalg.norm(y) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(y[:4] / y[0], 1.0)
        # depth entries are 0.5 before normalization, rgb rescales to (0, 0.5, 1)
        np.testing.assert_allclose(y[4:] / y[0], [0.0, 1.0, 2.0])

    def test_modality_selects_blocks(self):
        depth, rgb = np.arange(5.0), np.array([3.0, 1.0, 2.0])
        assert fuse_single(depth, None, Modality.DEPTH).shape == (5,)
        assert fuse_single(None, rgb, Modality.RGB).shape == (3,)
        with pytest.raises(InvalidInputError):
            fuse_single(None, rgb, Modality.FUSED)

    def test_block_dims_checked(self):
        with pytest.raises(InvalidInputError, match="Block dimensions"):
            fuse_single(np.arange(5.0), np.arange(3.0), block_dims=(4, 3))

    def test_tiny_depth_block_keeps_its_shape(self):
        y = fuse_single(np.array([0.0, 5e-13, 1e-12, 3e-13]), np.array([0.0, 1.0, 2.0]))
        # depth rescales to (0, 0.5, 1, 0.3) before normalization
        np.testing.assert_allclose(y[:4] / y[2], [0.0, 0.5, 1.0, 0.3], atol=1e-9)


class TestDictionaryInvariants:
    def test_class_matrix_has_one_entry_per_sample(self):
        labels = np.array([2, 0, 1, 2, 2, 0, 1])
        b = class_matrix(labels, 4)
        assert b.sum() == labels.size
        np.testing.assert_array_equal(b.sum(axis=0), 1.0)
        np.testing.assert_array_equal(b.sum(axis=1), np.bincount(labels, minlength=4))

    def test_common_column_permutation(self):
        rng = np.random.default_rng(6)
        depth, rgb = rng.standard_normal((12, 9)), rng.random((5, 9))
        labels = rng.integers(0, 3, size=9)
        order = rng.permutation(9)
        base = fuse(depth, rgb, labels, 3)
        permuted = fuse(depth[:, order], rgb[:, order], labels[order], 3)
        np.testing.assert_allclose(permuted.X, base.X[:, order], rtol=0, atol=1e-14)
        np.testing.assert_array_equal(permuted.B, base.B[:, order])
        np.testing.assert_array_equal(permuted.labels, base.labels[order])

    def test_full_scale_row_count(self):
        rng = np.random.default_rng(7)
        depth = np.column_stack([encode_depth(rng.standard_normal((4096, 20))) for _ in range(2)])
        rgb = rng.random((sum(FULL_WIDTHS), 2))
        dictionary = fuse(depth, rgb, [0, 1], 2)
        assert dictionary.block_dims == (114688, 6000)
        assert dictionary.X.shape == (120688, 2)
