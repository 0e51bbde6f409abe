from __future__ import annotations

from math import comb

import numpy as np
import pytest

from viewfuse.core.errors import InvalidInputError
from viewfuse.eval import (
    Protocol,
    ProtocolSpec,
    compute_accuracy,
    confusion_matrix,
    cross_subject_split,
    cross_view_split,
    protocol_splits,
    view_combinations,
)


@pytest.mark.parametrize(("views", "count"), [(3, 3), (4, 12), (5, 30)])
def test_combination_count(views: int, count: int):
    combos = view_combinations(list(range(views)))
    assert len(combos) == count == comb(views, 2) * (views - 2)
    assert len(set(combos)) == count
    assert all(test not in pair for pair, test in combos)


def test_combination_order():
    assert ProtocolSpec((0, 1, 2)).combinations == [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)]


class TestCrossViewSplit:
    def test_name(self):
        split = cross_view_split([0, 1], 2)
        assert split.name == "0,1->2"
        assert split.train_views == (0, 1)
        assert split.test_view == 2

    def test_overlap_rejected(self):
        with pytest.raises(InvalidInputError, match="also a training view"):
            cross_view_split([0, 1], 1)

    def test_empty_train_rejected(self):
        with pytest.raises(InvalidInputError):
            cross_view_split([], 1)

    def test_partition(self, noisy_bench):
        train, test = cross_view_split([0, 2], 1).partition(noisy_bench)
        assert {s.view for s in train} == {0, 2}
        assert {s.view for s in test} == {1}
        assert len(train) == 18
        assert len(test) == 9

    def test_empty_partition(self, noisy_bench):
        with pytest.raises(InvalidInputError, match="no test samples"):
            cross_view_split([0, 1], 7).partition(noisy_bench)


def test_cross_subject(noisy_bench):
    split = cross_subject_split(noisy_bench)
    assert split.train_subjects == frozenset({0})
    train, test = split.partition(noisy_bench)
    assert {s.subject for s in train} == {0}
    assert {s.subject for s in test} == {1, 2}
    assert len(train) + len(test) == len(noisy_bench.samples)


def test_cross_subject_needs_subjects(noisy_bench):
    noisy_bench.samples = [s for s in noisy_bench.samples if s.subject == 0]
    with pytest.raises(InvalidInputError, match="two subjects"):
        cross_subject_split(noisy_bench)


def test_protocol_splits(noisy_bench):
    assert [s.name for s in protocol_splits(noisy_bench, "cross-view")] == [
        "0,1->2",
        "0,2->1",
        "1,2->0",
    ]
    assert len(protocol_splits(noisy_bench, Protocol.CROSS_SUBJECT)) == 1


def test_cross_view_needs_three_views(noisy_bench):
    noisy_bench.views = [0, 1]
    with pytest.raises(InvalidInputError, match="at least 3 views"):
        protocol_splits(noisy_bench, Protocol.CROSS_VIEW)


class TestAccuracy:
    def test_examples(self):
        assert compute_accuracy([0, 1, 2], [0, 1, 2]) == 1.0
        assert compute_accuracy([1, 2, 0], [0, 1, 2]) == 0.0
        assert compute_accuracy([0, 1, 1, 1], [0, 1, 1, 0]) == 0.75

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            compute_accuracy([], [])

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            compute_accuracy([0, 1], [0])


def test_confusion_rows_are_true_classes():
    counts = confusion_matrix([0, 2, 2, 1], [0, 1, 2, 1], 3)
    np.testing.assert_array_equal(counts, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert counts.sum(axis=1).tolist() == [1, 2, 1]
