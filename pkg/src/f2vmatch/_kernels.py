"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module takes over. ``BACKEND`` names the active
one. Both expose the same functions; ``get(name)`` returns a specific one.
"""

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_default = _ckernels if _ckernels is not None else _pykernels
BACKEND = _default.NAME


def get(name=None):
    if name is None:
        return _default
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available; "
                         f"have {sorted(BACKENDS)}") from None


def tunstall_codewords(log2_w0, log2_w1, n_leaves, backend=None):
    """Canonically ordered leaves of the greedy Tunstall tree."""
    impl = get(backend)
    if impl is not _pykernels:
        res = impl.tunstall_codewords(log2_w0, log2_w1, n_leaves)
        if res is not None:
            chars, lengths = res
            s = chars.decode("ascii")
            ends = np.cumsum(lengths).tolist()
            starts = [0] + ends[:-1]
            return [s[a:b] for a, b in zip(starts, ends)]
    return _pykernels.tunstall_codewords(log2_w0, log2_w1, n_leaves)


class CodeTables:
    """Flattened codeword table plus a parse trie for one backend."""

    def __init__(self, codewords, backend=None):
        self.impl = get(backend)
        joined = "".join(codewords).encode("ascii")
        self.flat = np.frombuffer(joined, dtype=np.uint8) - np.uint8(48)
        self.lengths = np.array([len(w) for w in codewords], dtype=np.int64)
        self.offsets = np.concatenate(([0], np.cumsum(self.lengths)[:-1])).astype(np.int64)
        self.decoder = self.impl.compile_decoder(codewords)

    def expand(self, indices):
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        return self.impl.expand(self.flat, self.offsets, self.lengths, indices)

    def parse(self, bits):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        return self.impl.parse(self.decoder, bits)


OK, INVALID, DANGLING = _pykernels.OK, _pykernels.INVALID, _pykernels.DANGLING
