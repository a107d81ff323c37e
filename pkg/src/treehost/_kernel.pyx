# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled forward-checking search.

Same contract and candidate order as ``_kernel_py.search``; bitsets are
arrays of 64-bit words instead of Python ints.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef void _to_words(object value, uint64_t* out, int W):
    cdef int w
    cdef object mask = (1 << 64) - 1
    for w in range(W):
        out[w] = <uint64_t>(value & mask)
        value >>= 64


def search(later_adj, dom0, host_adj):
    cdef int P = len(dom0)
    cdef int H = len(host_adj)
    if P == 0:
        return []
    for d in dom0:
        if not d:
            return None
    cdef int W = (H + 63) // 64
    if W == 0:
        return None
    cdef uint64_t* hadj = <uint64_t*> malloc(H * W * sizeof(uint64_t))
    cdef uint64_t* doms = <uint64_t*> calloc(P * P * W, sizeof(uint64_t))
    cdef uint64_t* cand = <uint64_t*> calloc(P * W, sizeof(uint64_t))
    cdef char* adjm = <char*> calloc(P * P, sizeof(char))
    cdef int* assign = <int*> malloc(P * sizeof(int))
    if not hadj or not doms or not cand or not adjm or not assign:
        free(hadj); free(doms); free(cand); free(adjm); free(assign)
        raise MemoryError()
    cdef int i, j, w, p, wp
    cdef uint64_t bit, x, nz
    cdef bint ok, found
    cdef uint64_t* cur
    cdef uint64_t* nxt
    cdef uint64_t* ap
    result = None
    try:
        for i in range(H):
            _to_words(host_adj[i], hadj + i * W, W)
        for i in range(P):
            _to_words(dom0[i], doms + i * W, W)
            la = later_adj[i]
            for j in range(i + 1, P):
                if (la >> j) & 1:
                    adjm[i * P + j] = 1
        for w in range(W):
            cand[w] = doms[w]
        i = 0
        with nogil:
            found = False
            while i >= 0:
                # lowest remaining candidate at level i
                p = -1
                for w in range(W):
                    x = cand[i * W + w]
                    if x:
                        wp = __builtin_ctzll(x)
                        cand[i * W + w] = x & (x - 1)
                        p = w * 64 + wp
                        break
                if p < 0:
                    i -= 1
                    continue
                if i == P - 1:
                    assign[i] = p
                    found = True
                    break
                cur = doms + i * P * W
                nxt = doms + (i + 1) * P * W
                ap = hadj + p * W
                ok = True
                for j in range(i + 1, P):
                    nz = 0
                    for w in range(W):
                        x = cur[j * W + w]
                        if w == p // 64:
                            x &= ~((<uint64_t>1) << (p % 64))
                        if adjm[i * P + j]:
                            x &= ap[w]
                        nxt[j * W + w] = x
                        nz |= x
                    if not nz:
                        ok = False
                        break
                if not ok:
                    continue
                assign[i] = p
                i += 1
                for w in range(W):
                    cand[i * W + w] = nxt[i * W + w]
        if found:
            result = [assign[k] for k in range(P)]
    finally:
        free(hadj); free(doms); free(cand); free(adjm); free(assign)
    return result
