"""On-disk formats used by the command line tool.

CodeFile (JSON)::

    {"format_version": 1, "kind": "matcher" | "source", "m": 2,
     "q": [0.615, 0.385], "delta": 0.0377 | null,
     "codewords": ["000", "001", "01", "1"]}

``codewords[k]`` is the codeword assigned to the m-bit word with value k.

BitFile (binary)::

    b"F2VM" | version (1 byte) | bit count (uint64 little-endian) | payload

The payload holds the bits MSB-first within each byte; the last byte is
zero-padded and the payload is exactly ``ceil(bit_count / 8)`` bytes.
"""

from __future__ import annotations

import json
import struct
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from .codec import MatcherCode, as_bits
from .core import make_weights, tree_from_codewords
from .errors import F2VError, FormatError

CODEFILE_VERSION = 1
KINDS = ("matcher", "source")

MAGIC = b"F2VM"
BITFILE_VERSION = 1
_HEADER = struct.Struct("<4sBQ")


@dataclass
class CodeFile:
    m: int
    q: Tuple[float, float]
    codewords: List[str]
    kind: str = "matcher"
    delta: Optional[float] = None
    format_version: int = CODEFILE_VERSION

    def validate(self):
        if self.format_version != CODEFILE_VERSION:
            raise FormatError(f"unsupported CodeFile version {self.format_version}")
        if self.kind not in KINDS:
            raise FormatError(f"kind must be one of {KINDS}, got {self.kind!r}")
        try:
            weights = make_weights(*self.q)
            tree = tree_from_codewords(self.codewords)
        except (F2VError, TypeError) as exc:
            raise FormatError(f"invalid CodeFile: {exc}") from exc
        if tree.m != self.m:
            raise FormatError(f"m={self.m} but {len(self.codewords)} codewords")
        if abs(weights.w0 + weights.w1 - 1.0) > 1e-9:
            warnings.warn(f"q = {self.q} does not sum to 1", stacklevel=2)

    @property
    def weights(self):
        return make_weights(*self.q)

    def code(self) -> MatcherCode:
        return MatcherCode.from_mapping(self.codewords)

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "kind": self.kind,
            "m": self.m,
            "q": list(self.q),
            "delta": self.delta,
            "codewords": list(self.codewords),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "CodeFile":
        try:
            cf = cls(
                m=int(obj["m"]),
                q=(float(obj["q"][0]), float(obj["q"][1])),
                codewords=[str(w) for w in obj["codewords"]],
                kind=obj.get("kind", "matcher"),
                delta=None if obj.get("delta") is None else float(obj["delta"]),
                format_version=int(obj.get("format_version", CODEFILE_VERSION)),
            )
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed CodeFile: {exc!r}") from exc
        cf.validate()
        return cf

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "CodeFile":
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not JSON ({exc})") from exc
        if not isinstance(obj, dict):
            raise FormatError(f"{path}: expected a JSON object")
        return cls.from_dict(obj)


def pack_bits(bits) -> bytes:
    bits = as_bits(bits)
    header = _HEADER.pack(MAGIC, BITFILE_VERSION, bits.size)
    return header + np.packbits(bits, bitorder="big").tobytes()


def unpack_bits(data: bytes) -> np.ndarray:
    if len(data) < _HEADER.size:
        raise FormatError("BitFile shorter than its header")
    magic, version, nbits = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad BitFile magic {magic!r}")
    if version != BITFILE_VERSION:
        raise FormatError(f"unsupported BitFile version {version}")
    payload = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    if payload.size != (nbits + 7) // 8:
        raise FormatError(f"header declares {nbits} bits but payload has "
                          f"{payload.size} bytes")
    bits = np.unpackbits(payload, bitorder="big")
    if bits[nbits:].any():
        raise FormatError("nonzero padding bits in final byte")
    return bits[:nbits]


def write_bitfile(path, bits):
    Path(path).write_bytes(pack_bits(bits))


def read_bitfile(path) -> np.ndarray:
    return unpack_bits(Path(path).read_bytes())
