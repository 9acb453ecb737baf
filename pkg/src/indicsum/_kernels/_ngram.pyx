# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled clipped n-gram counting.

Tokens are interned to integer ids, every window of ``n`` ids is packed
into one 64-bit key, and reference windows are counted in a C++ hash
map that candidate windows then consume.  When a window cannot be
packed (vocabulary too large for the given ``n``) the pure-Python
routine is used instead, so results are identical either way.
"""

from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from ._ngram_py import clipped_ngram_stats as _py_stats


def clipped_ngram_stats(cand, ref, int n):
    """See ``indicsum._kernels._ngram_py.clipped_ngram_stats``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cdef Py_ssize_t lc = len(cand)
    cdef Py_ssize_t lr = len(ref)
    cdef Py_ssize_t cand_total = lc - n + 1 if lc >= n else 0
    cdef Py_ssize_t ref_total = lr - n + 1 if lr >= n else 0
    if cand_total == 0 or ref_total == 0:
        return 0, cand_total, ref_total

    cdef dict ids = {}
    cdef vector[uint64_t] cv, rv
    cv.reserve(lc)
    rv.reserve(lr)
    cdef Py_ssize_t next_id = 0
    cdef object tok, got
    for tok in cand:
        got = ids.setdefault(tok, next_id)
        if got == next_id:
            next_id += 1
        cv.push_back(<uint64_t> got)
    for tok in ref:
        got = ids.setdefault(tok, next_id)
        if got == next_id:
            next_id += 1
        rv.push_back(<uint64_t> got)

    cdef int shift = int(next_id - 1).bit_length() or 1
    if shift * n > 64:
        return _py_stats(cand, ref, n)

    cdef uint64_t mask = 0
    if n > 1:
        mask = ((<uint64_t> 1) << (shift * (n - 1))) - 1

    cdef unordered_map[uint64_t, long] ref_map
    cdef uint64_t key = 0
    cdef Py_ssize_t i
    for i in range(n):
        key = (key << shift) | rv[i]
    ref_map[key] += 1
    for i in range(n, lr):
        key = ((key & mask) << shift) | rv[i]
        ref_map[key] += 1

    cdef long overlap = 0
    key = 0
    for i in range(n):
        key = (key << shift) | cv[i]
    if ref_map.count(key) and ref_map[key] > 0:
        ref_map[key] -= 1
        overlap += 1
    for i in range(n, lc):
        key = ((key & mask) << shift) | cv[i]
        if ref_map.count(key) and ref_map[key] > 0:
            ref_map[key] -= 1
            overlap += 1

    return overlap, cand_total, ref_total
