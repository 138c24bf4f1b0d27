"""Pure-Python reference kernels (used when the compiled extension is absent).

Every function here has a drop-in twin in ``_ckernels.pyx``; both must give
identical output.
"""

import heapq
import math

import numpy as np

NAME = "python"

# Log weights are snapped to a 1e-12 grid so that near-equal weights tie and
# fall through to the lexicographic tie-break.
SNAP = 1e12

OK, INVALID, DANGLING = 0, 1, 2


def snap(x):
    return math.floor(x * SNAP + 0.5)


def tunstall_codewords(log2_w0, log2_w1, n_leaves):
    """Greedy Tunstall expansion; returns the leaves in canonical order."""
    heap = [(0, "", 0, 0)]
    for _ in range(n_leaves - 1):
        _, word, z, o = heap[0]
        left = (-snap((z + 1) * log2_w0 + o * log2_w1), word + "0", z + 1, o)
        right = (-snap(z * log2_w0 + (o + 1) * log2_w1), word + "1", z, o + 1)
        heapq.heapreplace(heap, left)
        heapq.heappush(heap, right)
    return sorted(entry[1] for entry in heap)


class Decoder:
    """Binary trie over codewords given in index order."""

    def __init__(self, codewords):
        child = [[-1, -1]]
        leaf = [-1]
        for index, word in enumerate(codewords):
            node = 0
            for c in word:
                b = c == "1"
                nxt = child[node][b]
                if nxt < 0:
                    nxt = len(child)
                    child[node][b] = nxt
                    child.append([-1, -1])
                    leaf.append(-1)
                node = nxt
            leaf[node] = index
        self.child = child
        self.leaf = leaf


def compile_decoder(codewords):
    return Decoder(codewords)


def parse(decoder, bits):
    """Split ``bits`` into codewords.

    Returns ``(indices, consumed, status, err_pos)``. ``status`` is OK,
    INVALID (``err_pos`` is the offending bit) or DANGLING (the stream ends
    inside a codeword starting at ``err_pos == consumed``).
    """
    child, leaf = decoder.child, decoder.leaf
    out = []
    node = 0
    consumed = 0
    for pos, b in enumerate(bits.tolist()):
        node = child[node][b]
        if node < 0:
            return np.array(out, dtype=np.int64), consumed, INVALID, pos
        if leaf[node] >= 0:
            out.append(leaf[node])
            node = 0
            consumed = pos + 1
    status = OK if node == 0 else DANGLING
    return np.array(out, dtype=np.int64), consumed, status, consumed


def expand(flat, offsets, lengths, indices):
    """Concatenate the codewords selected by ``indices``."""
    lens = lengths[indices]
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.uint8)
    ends = np.cumsum(lens)
    pos = np.arange(total) + np.repeat(offsets[indices] - (ends - lens), lens)
    return flat[pos]
