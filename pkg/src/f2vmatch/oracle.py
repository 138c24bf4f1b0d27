"""Exhaustive ground truth for small trees.

Two search spaces are covered: all complete trees with ``2**m`` leaves
(Catalan(2**m - 1) of them), and all prefix-free codes with ``n``
codewords of length at most ``max_depth``. The unrestricted space of
non-complete trees is infinite, so every result in capped mode is only
optimal up to the stated depth.

Capped minimization is done over *length profiles*: the matching
objectives depend on a code only through its total number of zeros and
ones, so all codes sharing those totals are evaluated at once. The profile
table keeps, for each total, the first code in enumeration order, so it
returns exactly what a streaming scan of :func:`enumerate_prefix_codes`
would (``method="stream"`` does that scan).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

from .core import BinaryWeights, CodeTree, _trusted_tree
from .errors import BadCount, DomainError, MTooLarge, TooLarge
from .metrics import idiv_compress, idiv_match, normalized_idiv

COMPLETE = "complete"
CAPPED = "prefix_free_capped"
OBJECTIVES = ("idiv_match", "normalized_idiv", "idiv_compress")

COMPLETE_M_MAX = 4
CAPPED_N_MAX = 8
CAPPED_DEPTH_MAX = 8
TIE_TOL = 1e-12


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def default_depth_cap(m: int) -> int:
    return 2 * m + 2


@dataclass(frozen=True)
class EnumerationSpec:
    num_leaves: int
    mode: str = COMPLETE
    max_depth: Optional[int] = None

    def __post_init__(self):
        n = self.num_leaves
        if n < 2 or n & (n - 1):
            raise BadCount(f"num_leaves must be 2**m with m >= 1, got {n}")
        if self.mode == COMPLETE:
            if self.max_depth is not None:
                raise DomainError("complete mode has no depth cap")
        elif self.mode == CAPPED:
            if self.max_depth is None or self.max_depth < 1:
                raise DomainError("capped mode needs max_depth >= 1")
        else:
            raise DomainError(f"unknown enumeration mode {self.mode!r}")

    @property
    def m(self) -> int:
        return self.num_leaves.bit_length() - 1

    @classmethod
    def complete(cls, m: int) -> "EnumerationSpec":
        return cls(1 << m, COMPLETE)

    @classmethod
    def capped(cls, m: int, max_depth: Optional[int] = None) -> "EnumerationSpec":
        if max_depth is None:
            max_depth = default_depth_cap(m)
        return cls(1 << m, CAPPED, max_depth)


def _complete_words(k: int) -> Iterator[list[str]]:
    if k == 1:
        yield [""]
        return
    for k0 in range(1, k):
        for left in _complete_words(k0):
            for right in _complete_words(k - k0):
                yield ["0" + w for w in left] + ["1" + w for w in right]


def enumerate_complete(m: int) -> Iterator[CodeTree]:
    """Every complete binary tree with ``2**m`` leaves, each exactly once."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if m > COMPLETE_M_MAX:
        raise MTooLarge(f"complete enumeration is limited to m <= {COMPLETE_M_MAX}")
    for words in _complete_words(1 << m):
        yield _trusted_tree(words)


def _check_capped(n: int, max_depth: int):
    if n > CAPPED_N_MAX or max_depth > CAPPED_DEPTH_MAX:
        raise TooLarge(f"capped enumeration is limited to n <= {CAPPED_N_MAX}, "
                       f"max_depth <= {CAPPED_DEPTH_MAX}")
    if n < 2 or n & (n - 1):
        raise BadCount(f"n must be 2**m with m >= 1, got {n}")
    if max_depth < 1:
        raise DomainError("max_depth must be >= 1")


def _prefix_words(k: int, d: int) -> Iterator[list[str]]:
    # k codewords inside a subtree of depth d; the subtree root may be a leaf.
    if k == 0:
        yield []
        return
    if k == 1:
        yield [""]
    if d == 0:
        return
    for k0 in range(k + 1):
        for left in _prefix_words(k0, d - 1):
            for right in _prefix_words(k - k0, d - 1):
                yield ["0" + w for w in left] + ["1" + w for w in right]


def enumerate_prefix_codes(n: int, max_depth: int) -> Iterator[CodeTree]:
    """Every prefix-free set of ``n`` codewords with lengths <= ``max_depth``."""
    _check_capped(n, max_depth)
    for words in _prefix_words(n, max_depth):
        yield _trusted_tree(words)


@lru_cache(maxsize=None)
def count_prefix_codes(k: int, d: int) -> int:
    total = 1 if k <= 1 else 0
    if d > 0 and k > 0:
        total += sum(count_prefix_codes(j, d - 1) * count_prefix_codes(k - j, d - 1)
                     for j in range(k + 1))
    return total


@lru_cache(maxsize=None)
def _profiles(k: int, d: int) -> dict:
    """Map (zeros, ones) totals to (rank of first code, its codewords)."""
    table = {}
    if k == 0:
        return {(0, 0): (0, ())}
    if k == 1:
        table[(0, 0)] = (0, ("",))
    if d == 0:
        return table
    offset = 1 if k == 1 else 0
    for k0 in range(k + 1):
        k1 = k - k0
        left, right = _profiles(k0, d - 1), _profiles(k1, d - 1)
        n_right = count_prefix_codes(k1, d - 1)
        # Both inputs are in rank order, so pairs are visited in rank order
        # and the first visit of a total is its lowest-ranked code.
        for (z0, o0), (r0, w0) in left.items():
            base = offset + r0 * n_right
            for (z1, o1), (r1, w1) in right.items():
                key = (z0 + z1 + k0, o0 + o1 + k1)
                if key not in table:
                    table[key] = (base + r1, w0, w1)
        offset += count_prefix_codes(k0, d - 1) * n_right
    out = {}
    for key, entry in sorted(table.items(), key=lambda kv: kv[1][0]):
        if len(entry) == 2:
            out[key] = entry
        else:
            rank, w0, w1 = entry
            out[key] = (rank, tuple("0" + w for w in w0) + tuple("1" + w for w in w1))
    return out


def _evaluate(tree: CodeTree, weights: BinaryWeights, objective: str) -> float:
    if objective == "idiv_match":
        return idiv_match(tree, weights)
    if objective == "normalized_idiv":
        return normalized_idiv(tree, weights)
    return idiv_compress(tree, weights)


def _scan(candidates, value_of):
    best_value, best = None, None
    for cand in candidates:
        v = value_of(cand)
        if best_value is None or v < best_value - TIE_TOL:
            best_value, best = v, cand
    return best_value, best


def brute_min(spec: EnumerationSpec, weights: BinaryWeights,
              objective: str = "normalized_idiv", *,
              method: Optional[str] = None) -> tuple[float, CodeTree]:
    """Exact minimizer of ``objective`` over the space described by ``spec``.

    Ties (within 1e-12) go to the first tree in enumeration order.
    ``method`` is ``"stream"`` (scan every tree) or ``"profile"`` (capped
    mode only, the default there).
    """
    if objective not in OBJECTIVES:
        raise DomainError(f"objective must be one of {OBJECTIVES}")
    if spec.mode == COMPLETE:
        if method not in (None, "stream"):
            raise DomainError("complete mode only supports method='stream'")
        return _scan(enumerate_complete(spec.m),
                     lambda t: _evaluate(t, weights, objective))

    if objective == "idiv_compress":
        raise DomainError("idiv_compress is only defined on complete trees")
    _check_capped(spec.num_leaves, spec.max_depth)
    method = method or "profile"
    if method == "stream":
        return _scan(enumerate_prefix_codes(spec.num_leaves, spec.max_depth),
                     lambda t: _evaluate(t, weights, objective))
    if method != "profile":
        raise DomainError(f"unknown method {method!r}")

    n, m = spec.num_leaves, spec.m
    a, b = weights.log2_w0, weights.log2_w1

    def value_of(item):
        (z, o), _ = item
        d = -m - (z * a + o * b) / n
        return d if objective == "idiv_match" else d / ((z + o) / n)

    value, item = _scan(_profiles(n, spec.max_depth).items(), value_of)
    return value, _trusted_tree(item[1][1])
