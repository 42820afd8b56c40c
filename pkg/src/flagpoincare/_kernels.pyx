# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the brute-force N-statistic enumeration."""

from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t

cdef enum:
    MAX_BLOCKS = 64


def n_statistic_labels(labels):
    cdef int k = len(labels)
    cdef int seen[MAX_BLOCKS]
    cdef int x, c, lab
    cdef long long total = 0
    for c in range(MAX_BLOCKS):
        seen[c] = 0
    for x in range(k):
        lab = labels[x]
        if lab < 0 or lab >= MAX_BLOCKS:
            raise ValueError("block label out of range")
        for c in range(lab):
            total += seen[c]
        seen[lab] += 1
    return total


cdef void _rec(int x, int k, int nb, int acc, int *profile, int *filled,
               int64_t *hist) noexcept nogil:
    cdef int c
    cdef int below = 0
    if x == k:
        hist[acc] += 1
        return
    for c in range(nb):
        if filled[c] < profile[c]:
            filled[c] += 1
            _rec(x + 1, k, nb, acc + below, profile, filled, hist)
            filled[c] -= 1
        below += filled[c]


def nstat_histogram(profile):
    cdef int nb = len(profile)
    cdef int c, k = 0, top = 0, before = 0
    cdef int prof[MAX_BLOCKS]
    cdef int filled[MAX_BLOCKS]
    cdef int64_t *hist
    if nb > MAX_BLOCKS:
        raise ValueError("too many blocks")
    for c in range(nb):
        prof[c] = profile[c]
        if prof[c] < 0:
            return []
        filled[c] = 0
        top += prof[c] * before
        before += prof[c]
        k += prof[c]
    if k > 20:
        raise OverflowError("k > 20 overflows 64-bit counts")
    hist = <int64_t *> calloc(top + 1, sizeof(int64_t))
    if hist == NULL:
        raise MemoryError()
    try:
        with nogil:
            _rec(0, k, nb, 0, prof, filled, hist)
        return [hist[c] for c in range(top + 1)]
    finally:
        free(hist)
