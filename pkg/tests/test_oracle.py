import itertools

import pytest

from f2vmatch import (EnumerationSpec, brute_min, catalan, enumerate_complete,
                      enumerate_prefix_codes, idiv_compress, make_weights,
                      tree_from_codewords, tunstall_build)
from f2vmatch.errors import BadCount, DomainError, MTooLarge, TooLarge
from f2vmatch.oracle import count_prefix_codes

from conftest import random_distributions


def subset_count(n, depth):
    """Independent count: filter all n-subsets of words up to ``depth``."""
    words = ["".join(p) for k in range(1, depth + 1)
             for p in itertools.product("01", repeat=k)]
    return sum(
        all(not b.startswith(a) for a, b in itertools.permutations(s, 2))
        for s in itertools.combinations(words, n))


class TestEnumerateComplete:
    def test_m1(self):
        trees = list(enumerate_complete(1))
        assert [t.codewords for t in trees] == [("0", "1")]

    @pytest.mark.parametrize("m, count", [(1, 1), (2, 5), (3, 429)])
    def test_counts(self, m, count):
        trees = list(enumerate_complete(m))
        assert len(trees) == count == catalan(2 ** m - 1)
        assert len(set(trees)) == count
        assert all(t.complete and t.num_leaves == 2 ** m for t in trees)

    def test_m4_streams(self):
        it = enumerate_complete(4)
        first = [next(it) for _ in range(100)]
        assert len(set(first)) == 100
        assert catalan(15) == 9_694_845

    def test_guard(self):
        with pytest.raises(MTooLarge):
            next(enumerate_complete(5))


class TestEnumeratePrefixCodes:
    @pytest.mark.parametrize("n, depth", [(2, 1), (2, 2), (2, 3), (2, 4), (4, 2), (4, 3)])
    def test_counts_against_subset_filter(self, n, depth):
        codes = list(enumerate_prefix_codes(n, depth))
        assert len(codes) == subset_count(n, depth) == count_prefix_codes(n, depth)
        assert len(set(codes)) == len(codes)
        assert all(max(c.lengths) <= depth for c in codes)

    def test_small_cases(self):
        assert [c.codewords for c in enumerate_prefix_codes(2, 1)] == [("0", "1")]
        assert [c.codewords for c in enumerate_prefix_codes(4, 2)] == [
            ("00", "01", "10", "11")]
        codes = {c.codewords for c in enumerate_prefix_codes(2, 2)}
        assert {("0", "1"), ("0", "10"), ("0", "11"), ("00", "01")} <= codes
        assert len(codes) == 11

    def test_validated(self):
        for c in enumerate_prefix_codes(4, 3):
            assert tree_from_codewords(c.codewords) == c

    def test_contains_all_complete(self):
        codes = set(enumerate_prefix_codes(4, 3))
        assert set(enumerate_complete(2)) <= codes

    def test_guards(self):
        with pytest.raises(TooLarge):
            next(enumerate_prefix_codes(16, 4))
        with pytest.raises(TooLarge):
            next(enumerate_prefix_codes(2, 9))
        with pytest.raises(BadCount):
            next(enumerate_prefix_codes(3, 3))


class TestEnumerationSpec:
    def test_modes(self):
        assert EnumerationSpec.complete(3).num_leaves == 8
        assert EnumerationSpec.capped(2).max_depth == 6
        with pytest.raises(DomainError):
            EnumerationSpec(4, "complete", 3)
        with pytest.raises(DomainError):
            EnumerationSpec(4, "prefix_free_capped")
        with pytest.raises(DomainError):
            EnumerationSpec(4, "other")
        with pytest.raises(BadCount):
            EnumerationSpec(6)


class TestBruteMin:
    def test_single_split(self):
        v, t = brute_min(EnumerationSpec.complete(1), make_weights(5 / 6, 1 / 6),
                         "normalized_idiv")
        assert abs(v - 0.424) <= 5e-4
        assert t.codewords == ("0", "1")

    def test_capped_counterexample(self):
        spec = EnumerationSpec(2, "prefix_free_capped", 3)
        v, t = brute_min(spec, make_weights(5 / 6, 1 / 6), "normalized_idiv")
        assert v <= 0.37034 + 2e-4
        assert not t.complete

    def test_compress_q615(self):
        dist = make_weights(0.615, 0.385)
        v, t = brute_min(EnumerationSpec.complete(2), dist, "idiv_compress")
        assert abs(v - 0.077006) <= 2e-4
        assert t == tunstall_build(dist, 2)
        assert v == idiv_compress(t, dist)

    def test_compress_not_in_capped_mode(self):
        with pytest.raises(DomainError):
            brute_min(EnumerationSpec.capped(1), make_weights(0.5, 0.5), "idiv_compress")

    def test_bad_objective(self):
        with pytest.raises(DomainError):
            brute_min(EnumerationSpec.complete(1), make_weights(0.5, 0.5), "rate")

    @pytest.mark.parametrize("n, depth", [(2, 3), (2, 4), (4, 3), (4, 4)])
    @pytest.mark.parametrize("objective", ["idiv_match", "normalized_idiv"])
    def test_profile_equals_stream(self, rng, n, depth, objective):
        spec = EnumerationSpec(n, "prefix_free_capped", depth)
        for w in random_distributions(rng, 4) + [make_weights(1.3, 0.4),
                                                 make_weights(0.5, 0.5)]:
            a = brute_min(spec, w, objective, method="profile")
            b = brute_min(spec, w, objective, method="stream")
            assert abs(a[0] - b[0]) <= 1e-12
            assert a[1] == b[1]

    def test_profile_handles_largest_space(self):
        # about 6.4e16 codes: only the profile table can cover this
        spec = EnumerationSpec(8, "prefix_free_capped", 8)
        v, t = brute_min(spec, make_weights(0.5, 0.5), "normalized_idiv")
        assert abs(v) <= 1e-12
        assert count_prefix_codes(8, 8) > 10 ** 16
