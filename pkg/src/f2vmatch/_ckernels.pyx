# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Tunstall expansion, prefix parsing, codeword expansion.

Behaviour mirrors ``_pykernels`` exactly. ``tunstall_codewords`` returns
``None`` when a path would exceed 63 bits or a snapped key would overflow;
the caller then falls back to the Python kernel.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport floor, fabs
from libc.stdint cimport int64_t, uint64_t, int32_t, uint8_t
from libc.stdlib cimport malloc, free, qsort

cnp.import_array()

NAME = "cython"

DEF SNAP = 1e12
DEF KEY_LIMIT = 9.0e18

OK = 0
INVALID = 1
DANGLING = 2

ctypedef struct Leaf:
    int64_t key
    uint64_t bits
    int32_t length
    int32_t zeros


cdef inline bint _before(Leaf* a, Leaf* b) noexcept nogil:
    if a.key != b.key:
        return a.key > b.key
    return a.bits < b.bits


cdef inline void _sift_down(Leaf* h, Py_ssize_t n, Py_ssize_t i) noexcept nogil:
    cdef Leaf item = h[i]
    cdef Py_ssize_t c
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and _before(&h[c + 1], &h[c]):
            c += 1
        if not _before(&h[c], &item):
            break
        h[i] = h[c]
        i = c
    h[i] = item


cdef inline void _sift_up(Leaf* h, Py_ssize_t i) noexcept nogil:
    cdef Leaf item = h[i]
    cdef Py_ssize_t p
    while i > 0:
        p = (i - 1) >> 1
        if not _before(&item, &h[p]):
            break
        h[i] = h[p]
        i = p
    h[i] = item


cdef inline bint _snap(double x, int64_t* out) noexcept nogil:
    cdef double y = x * SNAP + 0.5
    if fabs(y) > KEY_LIMIT:
        return False
    out[0] = <int64_t>floor(y)
    return True


cdef int _cmp_bits(const void* a, const void* b) noexcept nogil:
    cdef uint64_t x = (<Leaf*>a).bits
    cdef uint64_t y = (<Leaf*>b).bits
    return (x > y) - (x < y)


def tunstall_codewords(double log2_w0, double log2_w1, Py_ssize_t n_leaves):
    cdef Leaf* h = <Leaf*>malloc(n_leaves * sizeof(Leaf))
    if h == NULL:
        raise MemoryError()
    cdef Py_ssize_t n = 1, step, i, j, total = 0
    cdef Leaf top, left, right
    cdef int32_t z, o
    cdef bint ok = True
    cdef char* buf
    cdef uint64_t b
    h[0].key = 0
    h[0].bits = 0
    h[0].length = 0
    h[0].zeros = 0
    try:
        with nogil:
            for step in range(n_leaves - 1):
                top = h[0]
                if top.length >= 63:
                    ok = False
                    break
                z = top.zeros
                o = top.length - top.zeros
                left.bits = top.bits
                left.length = top.length + 1
                left.zeros = z + 1
                right.bits = top.bits | ((<uint64_t>1) << (63 - top.length))
                right.length = top.length + 1
                right.zeros = z
                if not _snap((z + 1) * log2_w0 + o * log2_w1, &left.key):
                    ok = False
                    break
                if not _snap(z * log2_w0 + (o + 1) * log2_w1, &right.key):
                    ok = False
                    break
                h[0] = left
                _sift_down(h, n, 0)
                h[n] = right
                n += 1
                _sift_up(h, n - 1)
            if ok:
                qsort(h, n, sizeof(Leaf), _cmp_bits)
        if not ok:
            return None
        lengths = np.empty(n, dtype=np.int64)
        for i in range(n):
            lengths[i] = h[i].length
            total += h[i].length
        chars = bytearray(total)
        buf = chars
        total = 0
        for i in range(n):
            b = h[i].bits
            for j in range(h[i].length):
                buf[total] = 49 if (b >> (63 - j)) & 1 else 48
                total += 1
        return bytes(chars), lengths
    finally:
        free(h)


class Decoder:
    def __init__(self, child, leaf):
        self.child = child
        self.leaf = leaf


def compile_decoder(codewords):
    cdef Py_ssize_t cap = 1, node, nxt, count = 1, index, k
    cdef int b
    for w in codewords:
        cap += len(w)
    child_arr = np.full(2 * cap, -1, dtype=np.int32)
    leaf_arr = np.full(cap, -1, dtype=np.int32)
    cdef int32_t[::1] child = child_arr
    cdef int32_t[::1] leaf = leaf_arr
    cdef const unsigned char[:] word
    for index, w in enumerate(codewords):
        word = w.encode("ascii")
        node = 0
        for k in range(word.shape[0]):
            b = word[k] - 48
            nxt = child[2 * node + b]
            if nxt < 0:
                nxt = count
                count += 1
                child[2 * node + b] = nxt
            node = nxt
        leaf[node] = index
    return Decoder(child_arr[:2 * count].copy(), leaf_arr[:count].copy())


def parse(decoder, const uint8_t[::1] bits):
    cdef const int32_t[::1] child = decoder.child
    cdef const int32_t[::1] leaf = decoder.leaf
    cdef Py_ssize_t n = bits.shape[0], pos, count = 0, consumed = 0
    cdef Py_ssize_t err = -1
    cdef int32_t node = 0
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    with nogil:
        for pos in range(n):
            node = child[2 * node + bits[pos]]
            if node < 0:
                err = pos
                break
            if leaf[node] >= 0:
                out[count] = leaf[node]
                count += 1
                node = 0
                consumed = pos + 1
    if err >= 0:
        return out_arr[:count].copy(), consumed, INVALID, err
    status = OK if node == 0 else DANGLING
    return out_arr[:count].copy(), consumed, status, consumed


def expand(const uint8_t[::1] flat, const int64_t[::1] offsets,
           const int64_t[::1] lengths, const int64_t[::1] indices):
    cdef Py_ssize_t i, j, total = 0, n = indices.shape[0], at = 0
    cdef int64_t idx, start, ell
    for i in range(n):
        total += lengths[indices[i]]
    out_arr = np.empty(total, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    with nogil:
        for i in range(n):
            idx = indices[i]
            start = offsets[idx]
            ell = lengths[idx]
            for j in range(ell):
                out[at + j] = flat[start + j]
            at += ell
    return out_arr
