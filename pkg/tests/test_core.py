import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from f2vmatch import (balanced_tree, is_complete, leaf_stats, make_weights,
                      tree_from_codewords)
from f2vmatch.errors import BadCount, DomainError, EmptyWord, PrefixViolation

from conftest import random_tree


class TestMakeWeights:
    def test_distribution(self):
        w = make_weights(2 / 3, 1 / 3)
        assert w.is_distribution
        assert abs(w.log2_w0 - math.log2(2 / 3)) <= 1e-12
        assert abs(w.log2_w1 - math.log2(1 / 3)) <= 1e-12

    def test_weighted(self):
        assert not make_weights(1, 1).is_distribution

    def test_scaled_target(self):
        w = make_weights(0.615 * 2 ** 0.1, 0.385 * 2 ** 0.1)
        assert not w.is_distribution
        assert w.w0 > 0.615

    @pytest.mark.parametrize("bad", [0, -1, float("nan"), float("inf"), -0.0])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            make_weights(bad, 0.5)
        with pytest.raises(DomainError):
            make_weights(0.5, bad)


class TestTreeFromCodewords:
    def test_thirds_tree(self):
        t = tree_from_codewords(["000", "001", "01", "1"])
        assert t.m == 2
        assert t.kraft_sum == 1
        assert is_complete(t)

    def test_noncomplete(self):
        t = tree_from_codewords(["0", "10"])
        assert t.m == 1
        assert t.kraft_sum == Fraction(3, 4)
        assert not is_complete(t)

    def test_canonical_order(self):
        t = tree_from_codewords(["1", "01", "000", "001"])
        assert t.codewords == ("000", "001", "01", "1")
        assert t == tree_from_codewords(["000", "001", "01", "1"])

    def test_balanced(self):
        assert is_complete(tree_from_codewords(["00", "01", "10", "11"]))
        assert balanced_tree(3).codewords == tuple(format(i, "03b") for i in range(8))

    def test_prefix_violation(self):
        with pytest.raises(PrefixViolation):
            tree_from_codewords(["0", "01"])
        with pytest.raises(PrefixViolation):
            tree_from_codewords(["1", "0", "10", "11"])

    def test_duplicate_is_prefix_violation(self):
        with pytest.raises(PrefixViolation):
            tree_from_codewords(["0", "0"])

    @pytest.mark.parametrize("words", [["0"], ["0", "10", "11"], []])
    def test_bad_count(self, words):
        with pytest.raises(BadCount):
            tree_from_codewords(words)

    def test_empty_word(self):
        with pytest.raises(EmptyWord):
            tree_from_codewords(["", "1"])

    def test_non_binary(self):
        with pytest.raises(DomainError):
            tree_from_codewords(["0", "2"])

    def test_idempotent(self):
        t = tree_from_codewords(["11", "0", "100", "101"])
        assert tree_from_codewords(t.codewords) == t
        assert tree_from_codewords(t.codewords).codewords == t.codewords


class TestLeafStats:
    def test_thirds_weights(self):
        t = tree_from_codewords(["000", "001", "01", "1"])
        stats = leaf_stats(t, make_weights(2 / 3, 1 / 3))
        got = [2 ** s.log2_weight for s in stats]
        np.testing.assert_allclose(got, [8 / 27, 4 / 27, 2 / 9, 1 / 3], atol=1e-12)
        assert [(s.len, s.zeros, s.ones) for s in stats] == [
            (3, 3, 0), (3, 2, 1), (2, 1, 1), (1, 0, 1)]

    def test_fair_coin(self):
        stats = leaf_stats(tree_from_codewords(["0", "1"]), make_weights(0.5, 0.5))
        assert [2 ** s.log2_weight for s in stats] == [0.5, 0.5]

    def test_noncomplete_weights(self):
        # per-path products: q0 and q1*q0
        stats = leaf_stats(tree_from_codewords(["0", "10"]), make_weights(5 / 6, 1 / 6))
        np.testing.assert_allclose([2 ** s.log2_weight for s in stats],
                                   [5 / 6, 5 / 36], rtol=1e-12)

    def test_fields_consistent(self, rng):
        w = make_weights(0.3, 0.9)
        for s in leaf_stats(random_tree(rng, 4, complete=False), w):
            assert s.zeros + s.ones == s.len
            direct = math.log2(0.3 ** s.zeros * 0.9 ** s.ones)
            assert abs(s.log2_weight - direct) <= 1e-10


@given(st.integers(1, 6), st.floats(0.01, 0.99), st.integers(0, 2 ** 32 - 1),
       st.booleans())
def test_tree_properties(m, q0, seed, complete):
    rng = np.random.default_rng(seed)
    t = random_tree(rng, m, complete=complete)
    dist = make_weights(q0, 1 - q0)
    kraft = sum(Fraction(1, 2 ** len(w)) for w in t.codewords)
    assert kraft == t.kraft_sum
    assert kraft <= 1
    assert (kraft == 1) == is_complete(t) == complete
    if complete:
        total = sum(2 ** s.log2_weight for s in leaf_stats(t, dist))
        assert abs(total - 1) <= 1e-9


@given(st.integers(1, 5), st.floats(0.05, 20.0), st.integers(0, 2 ** 32 - 1))
def test_scaling_shifts_log_weights(m, c, seed):
    rng = np.random.default_rng(seed)
    t = random_tree(rng, m, complete=bool(seed % 2))
    base = make_weights(0.7, 0.3)
    scaled = make_weights(0.7 * c, 0.3 * c)
    for a, b in zip(leaf_stats(t, base), leaf_stats(t, scaled)):
        assert abs(b.log2_weight - a.log2_weight - a.len * math.log2(c)) <= 1e-9
