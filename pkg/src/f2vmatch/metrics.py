"""Divergences, entropies and lengths of a code tree under binary weights.

All values are in bits and are totals over one m-bit block; per-bit figures
are obtained by dividing by ``m`` (source coding) or by the expected
codeword length (matching).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import BinaryWeights, CodeTree
from .errors import NotADistribution, NotComplete


@dataclass(frozen=True)
class TreeMetrics:
    idiv_match: float
    idiv_compress: Optional[float]
    expected_len: float
    normalized: float
    leaf_entropy: Optional[float]


def idiv_match(tree: CodeTree, weights: BinaryWeights) -> float:
    """D(U_T || Q_T): uniform leaves against the weight-induced leaves.

    ``weights`` need not sum to one, in which case the result may be negative.
    """
    # np.sum is pairwise, which keeps 2**m-term sums accurate.
    return float(-tree.m - np.mean(tree.log2_weights(weights)))


def expected_length(tree: CodeTree) -> float:
    return float(np.mean(tree.lengths))


def normalized_idiv(tree: CodeTree, weights: BinaryWeights) -> float:
    """I-divergence per output bit, D(U_T || Q_T) / E(L)."""
    return idiv_match(tree, weights) / expected_length(tree)


def _check_source_pair(tree: CodeTree, dist: BinaryWeights):
    if not tree.complete:
        raise NotComplete("the weight-induced leaf values form a distribution "
                          "only on complete trees")
    if not dist.is_distribution:
        raise NotADistribution(f"weights sum to {dist.w0 + dist.w1!r}, not 1")


def idiv_compress(tree: CodeTree, dist: BinaryWeights) -> float:
    """D(Q_T || U_T) for a complete tree and a true distribution."""
    _check_source_pair(tree, dist)
    lw = tree.log2_weights(dist)
    return float(np.sum(np.exp2(lw) * (lw + tree.m)))


def leaf_entropy(tree: CodeTree, dist: BinaryWeights) -> float:
    """H(Q_T), the entropy of the leaf distribution of a complete tree."""
    _check_source_pair(tree, dist)
    lw = tree.log2_weights(dist)
    return float(-np.sum(np.exp2(lw) * lw))


def tree_metrics(tree: CodeTree, weights: BinaryWeights) -> TreeMetrics:
    d = idiv_match(tree, weights)
    el = expected_length(tree)
    comp = ent = None
    if tree.complete and weights.is_distribution:
        comp = idiv_compress(tree, weights)
        ent = leaf_entropy(tree, weights)
    return TreeMetrics(d, comp, el, d / el, ent)
