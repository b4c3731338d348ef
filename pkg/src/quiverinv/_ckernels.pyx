# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular linear algebra kernels (moduli below 2^62)."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

cdef extern from *:
    """
    typedef unsigned __int128 qi_u128;
    static inline unsigned long long qi_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long p) {
        return (unsigned long long)(((qi_u128)a * b) % p);
    }
    """
    unsigned long long qi_mulmod(unsigned long long a, unsigned long long b,
                                 unsigned long long p) nogil


cdef uint64_t _inv(uint64_t a, uint64_t p) noexcept nogil:
    # p prime: a^(p-2)
    cdef uint64_t result = 1, base = a % p, e = p - 2
    while e:
        if e & 1:
            result = qi_mulmod(result, base, p)
        base = qi_mulmod(base, base, p)
        e >>= 1
    return result


cdef uint64_t* _load(rows, Py_ssize_t nrows, Py_ssize_t ncols, uint64_t p) except NULL:
    cdef uint64_t* a = <uint64_t*> malloc(max(nrows * ncols, 1) * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(nrows):
        r = rows[i]
        if len(r) != ncols:
            free(a)
            raise ValueError("ragged row")
        for j in range(ncols):
            a[i * ncols + j] = <uint64_t> (r[j] % p)
    return a


cdef Py_ssize_t _eliminate(uint64_t* a, Py_ssize_t nrows, Py_ssize_t ncols,
                           uint64_t p, bint full, Py_ssize_t* pivots) noexcept nogil:
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef uint64_t inv, f, t
    cdef uint64_t* prow
    cdef uint64_t* row
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if a[i * ncols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                t = a[piv * ncols + j]
                a[piv * ncols + j] = a[rank * ncols + j]
                a[rank * ncols + j] = t
        prow = a + rank * ncols
        inv = _inv(prow[c], p)
        for j in range(c, ncols):
            prow[j] = qi_mulmod(prow[j], inv, p)
        for i in range(0 if full else rank + 1, nrows):
            if i == rank:
                continue
            row = a + i * ncols
            f = row[c]
            if f == 0:
                continue
            for j in range(c, ncols):
                if prow[j] != 0:
                    row[j] = (row[j] + p - qi_mulmod(f, prow[j], p)) % p
        pivots[rank] = c
        rank += 1
    return rank


def rref_mod_p(rows, Py_ssize_t ncols, p):
    cdef Py_ssize_t nrows = len(rows)
    cdef uint64_t pp = p
    cdef uint64_t* a = _load(rows, nrows, ncols, pp)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t rank, i, j
    try:
        with nogil:
            rank = _eliminate(a, nrows, ncols, pp, True, piv)
        pivots = [piv[i] for i in range(rank)]
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rank)]
    finally:
        free(a)
        free(piv)
    return rank, pivots, out


def rank_mod_p(rows, Py_ssize_t ncols, p):
    cdef Py_ssize_t nrows = len(rows)
    cdef uint64_t pp = p
    cdef uint64_t* a = _load(rows, nrows, ncols, pp)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t rank
    try:
        with nogil:
            rank = _eliminate(a, nrows, ncols, pp, False, piv)
    finally:
        free(a)
        free(piv)
    return rank


def det_mod_p(rows, p):
    cdef Py_ssize_t n = len(rows), c, i, j, piv
    cdef uint64_t pp = p
    cdef uint64_t* a = _load(rows, n, n, pp)
    cdef uint64_t det = 1, inv, f, t
    cdef bint neg = False
    try:
        with nogil:
            for c in range(n):
                piv = -1
                for i in range(c, n):
                    if a[i * n + c] != 0:
                        piv = i
                        break
                if piv < 0:
                    det = 0
                    break
                if piv != c:
                    neg = not neg
                    for j in range(n):
                        t = a[piv * n + j]
                        a[piv * n + j] = a[c * n + j]
                        a[c * n + j] = t
                det = qi_mulmod(det, a[c * n + c], pp)
                inv = _inv(a[c * n + c], pp)
                for i in range(c + 1, n):
                    f = qi_mulmod(a[i * n + c], inv, pp)
                    if f == 0:
                        continue
                    for j in range(c, n):
                        a[i * n + j] = (a[i * n + j] + pp - qi_mulmod(f, a[c * n + j], pp)) % pp
    finally:
        free(a)
    if neg and det:
        return int(pp - det)
    return int(det)
