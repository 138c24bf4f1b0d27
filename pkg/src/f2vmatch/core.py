"""Weighted binary distributions and rooted binary code trees.

A code tree is stored as its sorted set of root-to-leaf paths ("codewords");
symbol ``0`` is the left branch. Branching nodes are never represented
explicitly: they are the proper prefixes of the codewords. All per-leaf
weights live in the log2 domain.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadCount, DomainError, EmptyWord, PrefixViolation

DIST_TOL = 1e-12


@dataclass(frozen=True)
class BinaryWeights:
    """A pair of strictly positive weights for the symbols 0 and 1.

    When ``w0 + w1 == 1`` (within 1e-12) this is a target distribution;
    otherwise it is a weighted distribution such as ``Q * 2**delta``.
    Use :func:`make_weights` rather than calling the constructor.
    """

    w0: float
    w1: float
    log2_w0: float
    log2_w1: float

    def __post_init__(self):
        for w in (self.w0, self.w1):
            if not (math.isfinite(w) and w > 0):
                raise DomainError(f"weights must be finite and > 0, got {w!r}")

    @property
    def is_distribution(self) -> bool:
        return abs(self.w0 + self.w1 - 1.0) <= DIST_TOL

    @property
    def qmin(self) -> float:
        return min(self.w0, self.w1)

    @property
    def qmax(self) -> float:
        return max(self.w0, self.w1)

    def __iter__(self):
        yield self.w0
        yield self.w1


def make_weights(w0: float, w1: float) -> BinaryWeights:
    """Validate two weights and cache their base-2 logarithms."""
    w0, w1 = float(w0), float(w1)
    for w in (w0, w1):
        if not (math.isfinite(w) and w > 0):
            raise DomainError(f"weights must be finite and > 0, got {w!r}")
    return BinaryWeights(w0, w1, math.log2(w0), math.log2(w1))


def distribution(q0: float) -> BinaryWeights:
    """The target distribution ``(q0, 1 - q0)``."""
    q0 = float(q0)
    if not 0.0 < q0 < 1.0:
        raise DomainError(f"q0 must lie in (0, 1), got {q0!r}")
    return make_weights(q0, 1.0 - q0)


@dataclass(frozen=True)
class LeafStats:
    len: int
    zeros: int
    ones: int
    log2_weight: float


@dataclass(frozen=True, eq=False)
class CodeTree:
    """A prefix-free set of ``2**m`` codewords in canonical (sorted) order.

    Equality and hashing use the codeword tuple only, so two trees are
    equal iff they have the same set of leaves.
    """

    m: int
    codewords: tuple[str, ...]
    kraft_sum: Fraction = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, CodeTree):
            return NotImplemented
        return self.codewords == other.codewords

    def __hash__(self):
        return hash(self.codewords)

    def __len__(self):
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    @property
    def num_leaves(self) -> int:
        return len(self.codewords)

    @property
    def complete(self) -> bool:
        return self.kraft_sum == 1

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.fromiter((len(w) for w in self.codewords), dtype=np.int64,
                           count=len(self.codewords))

    @cached_property
    def ones(self) -> np.ndarray:
        return np.fromiter((w.count("1") for w in self.codewords),
                           dtype=np.int64, count=len(self.codewords))

    @cached_property
    def zeros(self) -> np.ndarray:
        return self.lengths - self.ones

    def log2_weights(self, weights: BinaryWeights) -> np.ndarray:
        """log2 Q_T(i) for every leaf, in canonical order."""
        return self.zeros * weights.log2_w0 + self.ones * weights.log2_w1

    def length_multiset(self) -> list[int]:
        return sorted(len(w) for w in self.codewords)


def _kraft(words: Iterable[str]) -> Fraction:
    counts = Counter(len(w) for w in words)
    top = max(counts)
    num = sum(c << (top - ell) for ell, c in counts.items())
    return Fraction(num, 1 << top)


def _log2_count(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise BadCount(f"number of codewords must be 2**m with m >= 1, got {n}")
    return n.bit_length() - 1


def _trusted_tree(words: Sequence[str]) -> CodeTree:
    # Caller guarantees prefix-freeness and a power-of-two count.
    words = tuple(sorted(words))
    return CodeTree(_log2_count(len(words)), words, _kraft(words))


def tree_from_codewords(words: Iterable[str]) -> CodeTree:
    """Validate a set of codewords and return its canonical :class:`CodeTree`.

    Raises :class:`EmptyWord`, :class:`BadCount` or :class:`PrefixViolation`.
    """
    words = [str(w) for w in words]
    if not words:
        raise BadCount("no codewords given")
    for w in words:
        if not w:
            raise EmptyWord("codewords must be non-empty")
        if w.strip("01"):
            raise DomainError(f"codeword {w!r} is not over {{0,1}}")
    m = _log2_count(len(words))
    words.sort()
    # In sorted order a word that prefixes another also prefixes its successor.
    for a, b in zip(words, words[1:]):
        if b.startswith(a):
            raise PrefixViolation(f"{a!r} is a prefix of {b!r}")
    return CodeTree(m, tuple(words), _kraft(words))


def is_complete(tree: CodeTree) -> bool:
    return tree.kraft_sum == 1


def leaf_stats(tree: CodeTree, weights: BinaryWeights) -> list[LeafStats]:
    lw = tree.log2_weights(weights)
    return [
        LeafStats(int(n), int(z), int(o), float(x))
        for n, z, o, x in zip(tree.lengths, tree.zeros, tree.ones, lw)
    ]


def balanced_tree(m: int) -> CodeTree:
    """The complete tree whose ``2**m`` leaves all sit at depth ``m``."""
    return _trusted_tree([format(i, f"0{m}b") for i in range(1 << m)])
