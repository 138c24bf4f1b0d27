"""Tunstall trees for (possibly weighted) binary distributions."""

from __future__ import annotations

import math

from . import _kernels
from .core import BinaryWeights, CodeTree, _trusted_tree
from .errors import DomainError, MTooLarge, WeightOverflow

M_MAX = 24


def check_m(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    if m > M_MAX:
        raise MTooLarge(f"m={m} exceeds the supported maximum {M_MAX}")
    return int(m)


def tunstall_build(weights: BinaryWeights, m: int, *, backend=None) -> CodeTree:
    """Complete tree with ``2**m`` leaves built by greedy Tunstall expansion.

    Starting from the root, the leaf with the largest weight is split
    ``2**m - 1`` times. Weights equal within 1e-12 (in log2) are broken in
    favour of the lexicographically smallest path. The result maximizes
    the sum of log weights over the branching nodes, hence minimizes
    ``idiv_match`` among complete trees.
    """
    m = check_m(m)
    words = _kernels.tunstall_codewords(weights.log2_w0, weights.log2_w1,
                                        1 << m, backend=backend)
    return _trusted_tree(words)


def scale_weights(dist: BinaryWeights, delta: float) -> BinaryWeights:
    """The weighted distribution ``(w0 * 2**delta, w1 * 2**delta)``."""
    delta = float(delta)
    if not math.isfinite(delta):
        raise DomainError(f"delta must be finite, got {delta!r}")
    try:
        f = 2.0 ** delta
        w0, w1 = dist.w0 * f, dist.w1 * f
    except OverflowError:
        raise WeightOverflow(f"2**{delta} is not representable") from None
    if not (math.isfinite(w0) and math.isfinite(w1)):
        raise WeightOverflow(f"scaling by 2**{delta} overflows")
    if w0 == 0.0 or w1 == 0.0:
        raise WeightOverflow(f"scaling by 2**{delta} underflows")
    return BinaryWeights(w0, w1, dist.log2_w0 + delta, dist.log2_w1 + delta)
