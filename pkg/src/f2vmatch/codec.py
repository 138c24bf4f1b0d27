"""Bit-exact f2v matching and v2f source coding with a code tree.

A :class:`MatcherCode` pairs the ``2**m`` m-bit input words with the
codewords of a tree: index ``k`` (the m-bit word read as an unsigned
integer, MSB first) maps to ``codewords[k]``. The default assignment uses
the canonical codeword order. Both code directions share the two kernels:

* ``match_encode`` / ``source_decode``: indices -> concatenated codewords
* ``match_decode`` / ``source_encode``: prefix parse -> indices

Bit sequences are accepted as ``'0'/'1'`` strings or 0/1 integer arrays and
returned as ``numpy.uint8`` arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels
from .core import CodeTree, tree_from_codewords
from .errors import (DanglingSuffix, DomainError, InvalidSymbol,
                     LengthNotMultiple, NotComplete)


def as_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        if bits.strip("01"):
            raise DomainError("bit string may only contain '0' and '1'")
        return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - np.uint8(48)
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise DomainError("bit array may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def bits_to_str(bits) -> str:
    return (as_bits(bits) + np.uint8(48)).tobytes().decode("ascii")


@dataclass(frozen=True, eq=False)
class MatcherCode:
    tree: CodeTree
    codewords: tuple[str, ...]

    @classmethod
    def from_tree(cls, tree: CodeTree) -> "MatcherCode":
        """Canonical assignment: k-th input word -> k-th sorted codeword."""
        return cls(tree, tree.codewords)

    @classmethod
    def from_mapping(cls, words: Sequence[str]) -> "MatcherCode":
        """Explicit assignment: ``words[k]`` is the codeword of index ``k``."""
        words = tuple(words)
        return cls(tree_from_codewords(words), words)

    def __post_init__(self):
        if sorted(self.codewords) != list(self.tree.codewords):
            raise DomainError("codewords must be a permutation of the tree's leaves")

    @property
    def m(self) -> int:
        return self.tree.m

    @property
    def is_canonical(self) -> bool:
        return self.codewords == self.tree.codewords

    @property
    def index_map(self) -> dict[str, str]:
        m = self.m
        return {format(k, f"0{m}b"): w for k, w in enumerate(self.codewords)}

    @cached_property
    def _tables(self) -> _kernels.CodeTables:
        return _kernels.CodeTables(self.codewords)

    def __eq__(self, other):
        if not isinstance(other, MatcherCode):
            return NotImplemented
        return self.codewords == other.codewords

    def __hash__(self):
        return hash(self.codewords)


def _blocks_to_indices(bits: np.ndarray, m: int) -> np.ndarray:
    if bits.size % m:
        raise LengthNotMultiple(
            f"input length {bits.size} is not a multiple of m={m}",
            bit_offset=bits.size - bits.size % m)
    place = np.left_shift(1, np.arange(m - 1, -1, -1, dtype=np.int64))
    return bits.reshape(-1, m).astype(np.int64) @ place


def _indices_to_blocks(indices: np.ndarray, m: int) -> np.ndarray:
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    return ((indices[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)


def match_encode(code: MatcherCode, bits) -> np.ndarray:
    """Replace every m-bit block by its codeword. No padding is applied."""
    idx = _blocks_to_indices(as_bits(bits), code.m)
    return code._tables.expand(idx)


def match_decode(code: MatcherCode, bits) -> np.ndarray:
    """Inverse of :func:`match_encode`.

    Raises :class:`InvalidSymbol` when the stream leaves the tree (only
    possible for non-complete trees) and :class:`DanglingSuffix` when it
    ends inside a codeword.
    """
    idx, consumed, status, pos = code._tables.parse(as_bits(bits))
    if status == _kernels.INVALID:
        raise InvalidSymbol(f"bit {pos} does not continue any codeword", bit_offset=pos)
    if status == _kernels.DANGLING:
        raise DanglingSuffix(f"stream ends inside a codeword starting at bit {pos}",
                             bit_offset=pos)
    return _indices_to_blocks(idx, code.m)


def source_encode(code: MatcherCode, bits) -> tuple[np.ndarray, int]:
    """Parse a source stream into dictionary words, emitting m-bit indices.

    Returns the encoded bits and the number of source bits consumed; a
    trailing fragment that is only a proper prefix of a codeword is left
    unconsumed.
    """
    if not code.tree.complete:
        raise NotComplete("a v2f source code needs a complete tree")
    idx, consumed, status, pos = code._tables.parse(as_bits(bits))
    # complete trees have no dead ends, so INVALID cannot occur here
    assert status != _kernels.INVALID
    return _indices_to_blocks(idx, code.m), consumed


def source_decode(code: MatcherCode, bits) -> np.ndarray:
    """Map every m-bit index back to its dictionary word."""
    idx = _blocks_to_indices(as_bits(bits), code.m)
    return code._tables.expand(idx)
