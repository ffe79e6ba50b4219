# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coset-enumeration kernel (HLT with coincidence processing).

Mirrors the pure-Python reference kernel in ``_tc_py``: same strategy,
same limit semantics, same raw-table contract.  The caller standardizes
the table, so the two kernels produce byte-identical results.
"""

import time

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset
from cpython.bytes cimport PyBytes_FromStringAndSize

DEF UNDEF = -1

cdef struct TC:
    int ncols
    long nrows          # defined rows
    long alloc          # allocated rows
    long live
    long high
    long max_live
    int *table
    long *p
    long *queue         # coincidence queue; one slot per allocated row


cdef inline long rep(TC *t, long k) nogil:
    cdef long r = k, nxt
    while t.p[r] != r:
        r = t.p[r]
    while t.p[k] != r:
        nxt = t.p[k]
        t.p[k] = r
        k = nxt
    return r


cdef int grow(TC *t) except -1:
    cdef long newalloc = t.alloc * 2
    cdef int *nt = <int *> realloc(t.table, newalloc * t.ncols * sizeof(int))
    if nt != NULL:
        t.table = nt
    cdef long *np_ = <long *> realloc(t.p, newalloc * sizeof(long))
    if np_ != NULL:
        t.p = np_
    cdef long *nq = <long *> realloc(t.queue, newalloc * sizeof(long))
    if nq != NULL:
        t.queue = nq
    if nt == NULL or np_ == NULL or nq == NULL:
        raise MemoryError("coset table allocation failed")
    t.alloc = newalloc
    return 0


cdef long define(TC *t, long alpha, int c) except? -2:
    """New coset beta = alpha^c; returns beta, or -1 when live > max_live."""
    cdef long beta
    if t.nrows == t.alloc:
        grow(t)
    beta = t.nrows
    t.nrows += 1
    memset(t.table + beta * t.ncols, 0xFF, t.ncols * sizeof(int))  # UNDEF = -1
    t.p[beta] = beta
    t.table[alpha * t.ncols + c] = <int> beta
    t.table[beta * t.ncols + (c ^ 1)] = <int> alpha
    t.live += 1
    if t.live > t.high:
        t.high = t.live
    if t.live > t.max_live:
        return -1
    return beta


cdef void coincidence(TC *t, long a, long b) nogil:
    cdef long qhead = 0, qtail = 0
    cdef long gamma, delta, mu, nu, row, tmp
    cdef int c, inv
    a = rep(t, a)
    b = rep(t, b)
    if a == b:
        return
    if a > b:
        tmp = a; a = b; b = tmp
    t.p[b] = a
    t.live -= 1
    t.queue[qtail] = b
    qtail += 1
    while qhead < qtail:
        gamma = t.queue[qhead]
        qhead += 1
        row = gamma * t.ncols
        for c in range(t.ncols):
            delta = t.table[row + c]
            if delta == UNDEF:
                continue
            inv = c ^ 1
            t.table[delta * t.ncols + inv] = UNDEF
            mu = rep(t, gamma)
            nu = rep(t, delta)
            if t.table[mu * t.ncols + c] != UNDEF:
                delta = rep(t, t.table[mu * t.ncols + c])
                if nu != delta:
                    if nu > delta:
                        tmp = nu; nu = delta; delta = tmp
                    t.p[delta] = nu
                    t.live -= 1
                    t.queue[qtail] = delta
                    qtail += 1
            elif t.table[nu * t.ncols + inv] != UNDEF:
                delta = rep(t, t.table[nu * t.ncols + inv])
                if mu != delta:
                    if mu > delta:
                        tmp = mu; mu = delta; delta = tmp
                    t.p[delta] = mu
                    t.live -= 1
                    t.queue[qtail] = delta
                    qtail += 1
            else:
                t.table[mu * t.ncols + c] = <int> nu
                t.table[nu * t.ncols + inv] = <int> mu


cdef int scan_and_fill(TC *t, long alpha, const int *word, long wlen, bint fill) except? -2:
    """Scan one relator at one coset; returns 0, or -1 on coset limit."""
    cdef long f = alpha, b = alpha, i = 0, j = wlen - 1, beta
    cdef int c
    while True:
        while i <= j:
            c = word[i]
            beta = t.table[f * t.ncols + c]
            if beta == UNDEF:
                break
            f = beta
            i += 1
        if i > j:
            if f != b:
                coincidence(t, f, b)
            return 0
        while j >= i:
            c = word[j] ^ 1
            beta = t.table[b * t.ncols + c]
            if beta == UNDEF:
                break
            b = beta
            j -= 1
        if j < i:
            coincidence(t, f, b)
            return 0
        if j == i:
            c = word[i]
            t.table[f * t.ncols + c] = <int> b
            t.table[b * t.ncols + (c ^ 1)] = <int> f
            return 0
        if not fill:
            return 0
        c = word[i]
        beta = define(t, f, c)
        if beta < 0:
            return -1
        # forward scan resumes through the fresh coset


cdef long compact(TC *t, long cursor) except? -2:
    """Drop dead rows (order preserving); returns the remapped cursor."""
    cdef long *remap = <long *> malloc(t.nrows * sizeof(long))
    if remap == NULL:
        raise MemoryError("compaction buffer allocation failed")
    cdef long idx, n = 0, out_cursor
    cdef int c
    cdef long v
    for idx in range(t.nrows):
        if t.p[idx] == idx:
            remap[idx] = n
            n += 1
        else:
            remap[idx] = -1
    if cursor < t.nrows:
        out_cursor = remap[cursor] if remap[cursor] >= 0 else remap[rep(t, cursor)]
    else:
        out_cursor = n
    for idx in range(t.nrows):
        if remap[idx] < 0:
            continue
        for c in range(t.ncols):
            v = t.table[idx * t.ncols + c]
            if v != UNDEF:
                v = remap[rep(t, v)]
            t.table[remap[idx] * t.ncols + c] = <int> v
    t.nrows = n
    for idx in range(n):
        t.p[idx] = idx
    free(remap)
    return out_cursor


cdef int lookahead(TC *t, const int[::1] flat, const long[::1] offs) except -1:
    """Scan every relator at every live coset without defining cosets."""
    cdef long alpha = 0, r
    cdef long nrel = offs.shape[0] - 1
    while alpha < t.nrows:
        if t.p[alpha] == alpha:
            for r in range(nrel):
                scan_and_fill(t, alpha, &flat[offs[r]], offs[r + 1] - offs[r], False)
                if t.p[alpha] != alpha:
                    break
        alpha += 1
    return 0


def enumerate_hlt(int ncols, rel_flat, rel_offsets, long max_live, double deadline):
    """HLT enumeration over the trivial subgroup.

    rel_flat/rel_offsets: concatenated relator letters (column indices,
    int32) and int64 offsets.  Returns (status, table_bytes, live, high):
    status 0 complete, 1 coset limit, 2 time limit.
    """
    cdef const int[::1] flat = rel_flat
    cdef const long[::1] offs = rel_offsets
    cdef long nrel = offs.shape[0] - 1
    cdef TC t
    t.ncols = ncols
    t.nrows = 1
    t.alloc = 1024
    t.live = 1
    t.high = 1
    t.max_live = max_live
    t.table = <int *> malloc(t.alloc * ncols * sizeof(int))
    t.p = <long *> malloc(t.alloc * sizeof(long))
    t.queue = <long *> malloc(t.alloc * sizeof(long))
    if t.table == NULL or t.p == NULL or t.queue == NULL:
        free(t.table); free(t.p); free(t.queue)
        raise MemoryError("coset table allocation failed")
    memset(t.table, 0xFF, ncols * sizeof(int))
    t.p[0] = 0

    cdef long alpha = 0, r, beta, checked = 0
    cdef int c, rc
    cdef bint tried_lookahead = False
    cdef int status = 0
    try:
        while alpha < t.nrows:
            if t.p[alpha] != alpha:
                alpha += 1
                continue
            if t.nrows > 2 * t.live and t.nrows > (1 << 20):
                alpha = compact(&t, alpha)
            checked += 1
            if checked % 1024 == 0 and time.monotonic() > deadline:
                status = 2
                break
            r = 0
            while r < nrel:
                rc = scan_and_fill(&t, alpha, &flat[offs[r]], offs[r + 1] - offs[r], True)
                if rc == -1:
                    if tried_lookahead:
                        status = 1
                        break
                    tried_lookahead = True
                    lookahead(&t, flat, offs)
                    if t.live > t.max_live:
                        status = 1
                        break
                    alpha = compact(&t, alpha)
                    if t.p[alpha] != alpha:
                        break
                    r = 0  # rescan this coset from the first relator
                    continue
                if t.p[alpha] != alpha:
                    break
                r += 1
            if status:
                break
            if t.p[alpha] == alpha:
                for c in range(ncols):
                    if t.table[alpha * t.ncols + c] == UNDEF:
                        beta = define(&t, alpha, c)
                        if beta < 0:
                            if tried_lookahead:
                                status = 1
                                break
                            tried_lookahead = True
                            lookahead(&t, flat, offs)
                            if t.live > t.max_live:
                                status = 1
                                break
                            alpha = compact(&t, alpha)
                            if t.p[alpha] != alpha:
                                break
                            if t.table[alpha * t.ncols + c] != UNDEF:
                                continue
                            beta = define(&t, alpha, c)
                            if beta < 0:
                                status = 1
                                break
            if status:
                break
            alpha += 1
        if status:
            return status, b"", t.live, t.high
        compact(&t, t.nrows)
        out = PyBytes_FromStringAndSize(<char *> t.table, t.nrows * ncols * sizeof(int))
        return 0, out, t.live, t.high
    finally:
        free(t.table)
        free(t.p)
        free(t.queue)
