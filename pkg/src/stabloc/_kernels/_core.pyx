# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled GF(2) kernels for the subset loops behind delta and eta.

Bit layout and return conventions match ``stabloc._kernels._pure``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    NOT_FOUND = 0
    FOUND = 1
    EXHAUSTED = 2


cdef inline int _lowest(const uint64_t* row, const uint64_t* mask, int W) noexcept nogil:
    cdef int w
    cdef uint64_t v
    for w in range(W):
        v = row[w] & mask[w]
        if v:
            return (w << 6) + __builtin_ctzll(v)
    return -1


cdef inline void _xor(uint64_t* dst, const uint64_t* src, int W) noexcept nogil:
    cdef int w
    for w in range(W):
        dst[w] ^= src[w]


cdef int _insert(uint64_t* basis, int* slot, int* count, int W,
                 uint64_t* row, const uint64_t* ones) noexcept nogil:
    # xor-basis keyed by lowest set bit; returns 1 iff row was independent
    cdef int c
    while True:
        c = _lowest(row, ones, W)
        if c < 0:
            return 0
        if slot[c] < 0:
            memcpy(basis + count[0] * W, row, W * sizeof(uint64_t))
            slot[c] = count[0]
            count[0] += 1
            return 1
        _xor(row, basis + slot[c] * W, W)


cdef void _set_mask(uint64_t* mask, const int* idx, int k, int n, int W, bint complement) noexcept nogil:
    cdef int i, q, j
    memset(mask, 0, W * sizeof(uint64_t))
    for i in range(k):
        q = idx[i]
        mask[q >> 6] |= (<uint64_t>1) << (q & 63)
        j = q + n
        mask[j >> 6] |= (<uint64_t>1) << (j & 63)
    if complement:
        for i in range(W):
            mask[i] = ~mask[i]
        # clear padding bits above column 2n
        for j in range(2 * n, W * 64):
            mask[j >> 6] &= ~((<uint64_t>1) << (j & 63))


cdef inline bint _next_combination(int* idx, int k, int n) noexcept nogil:
    cdef int i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for i in range(i + 1, k):
        idx[i] = idx[i - 1] + 1
    return True


def rank_packed(cnp.uint64_t[:, ::1] rows):
    cdef int m = rows.shape[0]
    cdef int W = rows.shape[1]
    if m == 0 or W == 0:
        return 0
    cdef int ncols = 64 * W
    cdef uint64_t* basis = <uint64_t*> malloc(m * W * sizeof(uint64_t))
    cdef uint64_t* row = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* ones = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef int* slot = <int*> malloc(ncols * sizeof(int))
    cdef int count = 0, i
    try:
        for i in range(W):
            ones[i] = ~(<uint64_t>0)
        for i in range(ncols):
            slot[i] = -1
        with nogil:
            for i in range(m):
                memcpy(row, &rows[i, 0], W * sizeof(uint64_t))
                _insert(basis, slot, &count, W, row, ones)
        return count
    finally:
        free(basis); free(row); free(ones); free(slot)


def first_rank_drop(cnp.uint64_t[:, ::1] rows, int n, int k, int target, long long budget):
    cdef int m = rows.shape[0]
    cdef int W = rows.shape[1]
    cdef long long examined = 0
    if k < 1 or k > n or m == 0:
        return NOT_FOUND, None, 0
    cdef int ncols = 64 * W
    cdef uint64_t* basis = <uint64_t*> malloc(m * W * sizeof(uint64_t))
    cdef uint64_t* row = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* keep = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* ones = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef int* slot = <int*> malloc(ncols * sizeof(int))
    cdef int* idx = <int*> malloc(k * sizeof(int))
    cdef int i, w, count, status = NOT_FOUND
    try:
        for i in range(W):
            ones[i] = ~(<uint64_t>0)
        for i in range(k):
            idx[i] = i
        with nogil:
            while True:
                if budget >= 0 and examined >= budget:
                    status = EXHAUSTED
                    break
                examined += 1
                _set_mask(keep, idx, k, n, W, True)
                for i in range(ncols):
                    slot[i] = -1
                count = 0
                for i in range(m):
                    for w in range(W):
                        row[w] = rows[i, w] & keep[w]
                    _insert(basis, slot, &count, W, row, ones)
                if count < target:
                    status = FOUND
                    break
                if not _next_combination(idx, k, n):
                    break
        subset = tuple(idx[i] for i in range(k)) if status == FOUND else None
        return status, subset, examined
    finally:
        free(basis); free(row); free(keep); free(ones); free(slot); free(idx)


def span_supported(cnp.uint64_t[:, ::1] rows, int n, int k, int target, long long budget):
    cdef int m = rows.shape[0]
    cdef int W = rows.shape[1]
    cdef long long examined = 0
    if target <= 0:
        return FOUND, np.zeros((0, W), dtype=np.uint64), 0
    if k < 1 or k > n or m == 0:
        return NOT_FOUND, np.zeros((0, W), dtype=np.uint64), 0
    cdef int ncols = 64 * W
    cdef uint64_t* piv = <uint64_t*> malloc(m * W * sizeof(uint64_t))
    cdef uint64_t* acc = <uint64_t*> malloc(m * W * sizeof(uint64_t))
    cdef uint64_t* raw = <uint64_t*> malloc(m * W * sizeof(uint64_t))
    cdef uint64_t* row = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* tmp = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* outside = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* ones = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef int* pslot = <int*> malloc(ncols * sizeof(int))
    cdef int* aslot = <int*> malloc(ncols * sizeof(int))
    cdef int* idx = <int*> malloc(k * sizeof(int))
    cdef int i, w, c, pcount, acount = 0, status = NOT_FOUND
    cdef bint nonzero
    try:
        for i in range(W):
            ones[i] = ~(<uint64_t>0)
        for i in range(ncols):
            aslot[i] = -1
        for i in range(k):
            idx[i] = i
        with nogil:
            while True:
                if budget >= 0 and examined >= budget:
                    status = EXHAUSTED
                    break
                examined += 1
                _set_mask(outside, idx, k, n, W, True)
                for i in range(ncols):
                    pslot[i] = -1
                pcount = 0
                for i in range(m):
                    memcpy(row, &rows[i, 0], W * sizeof(uint64_t))
                    # eliminate on columns outside S, carrying the whole row
                    while True:
                        c = _lowest(row, outside, W)
                        if c < 0 or pslot[c] < 0:
                            break
                        _xor(row, piv + pslot[c] * W, W)
                    if c >= 0:
                        memcpy(piv + pcount * W, row, W * sizeof(uint64_t))
                        pslot[c] = pcount
                        pcount += 1
                        continue
                    nonzero = False
                    for w in range(W):
                        if row[w]:
                            nonzero = True
                            break
                    if not nonzero:
                        continue
                    memcpy(tmp, row, W * sizeof(uint64_t))
                    if _insert(acc, aslot, &acount, W, tmp, ones):
                        memcpy(raw + (acount - 1) * W, row, W * sizeof(uint64_t))
                        if acount >= target:
                            status = FOUND
                            break
                if status == FOUND:
                    break
                if not _next_combination(idx, k, n):
                    break
        out = np.empty((acount, W), dtype=np.uint64)
        for i in range(acount):
            for w in range(W):
                out[i, w] = raw[i * W + w]
        return status, out, examined
    finally:
        free(piv); free(acc); free(raw); free(row); free(tmp); free(outside)
        free(ones); free(pslot); free(aslot); free(idx)
