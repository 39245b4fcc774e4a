"""
Tests for partitions, r-partitions and standard Young tableaux
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.scalars.monomials import Monomial
from core.shapes.partitions import (
    EMPTY,
    Partition,
    RPartition,
    count_rpartitions,
    enumerate_rpartitions,
    partitions_of,
    rpartitions_up_to,
)
from core.shapes.tableaux import SkewShape, consecutive_labels_separated, count_syt, enumerate_syt, hook_length_count

small_partitions = st.integers(min_value=0, max_value=6).flatmap(lambda n: st.sampled_from(partitions_of(n)))


class TestPartition:
    def test_rejects_increasing_parts(self):
        with pytest.raises(ValueError):
            Partition((1, 2))

    def test_boxes_in_french_notation(self):
        assert sorted(Partition((2, 1)).boxes()) == [(0, 0), (0, 1), (1, 0)]

    def test_addable_and_removable(self):
        lam = Partition((2, 1))
        assert lam.removable() == [(1, 0), (0, 1)]
        assert lam.addable() == [(2, 0), (1, 1), (0, 2)]

    def test_partitions_of_order(self):
        assert partitions_of(3) == (Partition((3,)), Partition((2, 1)), Partition((1, 1, 1)))

    @given(small_partitions)
    def test_transpose_is_an_involution(self, lam):
        assert lam.transpose().transpose() == lam
        assert lam.transpose().size == lam.size

    @given(small_partitions)
    @settings(max_examples=30)
    def test_subpartitions_are_contained(self, lam):
        subs = lam.subpartitions()
        assert subs[0] == EMPTY
        assert subs[-1] == lam
        assert all(lam.contains(mu) for mu in subs)


class TestRPartition:
    def test_parse(self):
        lam = RPartition.parse("2,1|1", 2)
        assert lam == RPartition.of((2, 1), (1,))
        assert lam.size == 4

    def test_parse_empty_component(self):
        assert RPartition.parse("|1", 2) == RPartition.of((), (1,))

    def test_parse_rejects_wrong_rank(self):
        with pytest.raises(ValueError):
            RPartition.parse("1", 2)

    def test_to_json(self):
        assert RPartition.of((2, 1), ()).to_json() == [[2, 1], []]

    def test_box_weights(self):
        lam = RPartition.of((2,), (1,))
        expected = [
            Monomial.gen("u1"),
            Monomial({"u1": 1, "q1": 1}),
            Monomial.gen("u2"),
        ]
        assert lam.weights() == expected

    def test_primed_weights(self):
        assert RPartition.of((1,)).weights("up") == [Monomial.gen("up1")]

    def test_enumeration_order(self):
        assert enumerate_rpartitions(2, 1) == (RPartition.of((1,), ()), RPartition.of((), (1,)))

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_counts_match_generating_function(self, r):
        for n in range(7):
            assert len(enumerate_rpartitions(r, n)) == count_rpartitions(r, n)

    def test_known_counts(self):
        assert [count_rpartitions(1, n) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
        assert [count_rpartitions(2, n) for n in range(5)] == [1, 2, 5, 10, 20]

    def test_up_to(self):
        assert len(rpartitions_up_to(2, 2)) == 1 + 2 + 5

    def test_subpartitions_ordered_by_size(self):
        subs = RPartition.of((1,), (1,)).subpartitions()
        assert [s.size for s in subs] == [0, 1, 1, 2]


class TestTableaux:
    @given(small_partitions)
    @settings(max_examples=30, deadline=None)
    def test_hook_length_formula(self, lam):
        shape = SkewShape(RPartition((lam,)), RPartition.empty(1))
        assert count_syt(shape) == hook_length_count(lam)

    def test_colored_shape_counts_interleavings(self):
        shape = SkewShape(RPartition.of((1,), (1,)), RPartition.empty(2))
        assert count_syt(shape) == 2

    def test_skew_shape_requires_containment(self):
        with pytest.raises(ValueError):
            SkewShape(RPartition.of((1,)), RPartition.of((2,)))

    def test_skew_strip(self):
        shape = SkewShape(RPartition.of((2, 1)), RPartition.of((1,)))
        assert shape.size == 2
        assert count_syt(shape) == 2

    def test_tableaux_use_every_box_once(self):
        shape = SkewShape(RPartition.of((2, 1)), RPartition.empty(1))
        for t in enumerate_syt(shape):
            assert sorted((b.i, b.j) for b in t.boxes) == sorted(shape.outer.components[0].boxes())

    def test_labels_decrease_up_and_right(self):
        shape = SkewShape(RPartition.of((2, 1)), RPartition.empty(1))
        for t in enumerate_syt(shape):
            labels = {(b.i, b.j): n for n, b in enumerate(t.boxes, start=1)}
            assert labels[(0, 0)] > labels[(1, 0)]
            assert labels[(0, 0)] > labels[(0, 1)]

    def test_to_json_shape(self):
        shape = SkewShape(RPartition.of((1,)), RPartition.empty(1))
        (t,) = enumerate_syt(shape)
        assert t.to_json() == {"outer": [[1]], "inner": [[]], "labels": [[[1]]]}

    def test_single_column_is_separated(self):
        shape = SkewShape(RPartition.of((1, 1)), RPartition.empty(1))
        assert all(consecutive_labels_separated(t) for t in enumerate_syt(shape))
