"""Pure-Python modular linear algebra kernels.

Reference implementation of the functions in ``_ckernels.pyx``.  Inputs are
lists of rows of Python ints; entries are reduced mod ``p`` on entry.
"""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over GF(p).

    Returns ``(rank, pivot_columns, reduced_rows)``; the reduced rows are the
    nonzero rows of the RREF, pivot entries equal to 1.
    """
    a = [[x % p for x in r] for r in rows]
    for r in a:
        if len(r) != ncols:
            raise ValueError("ragged row")
    nrows = len(a)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i != rank:
                row = a[i]
                f = row[c]
                if f:
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        rank += 1
    return rank, pivots, a[:rank]


def rank_mod_p(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    nrows = len(a)
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        rank += 1
    return rank


def det_mod_p(rows, p):
    n = len(rows)
    a = [[x % p for x in r] for r in rows]
    det = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        prow = a[c]
        det = det * prow[c] % p
        inv = pow(prow[c], -1, p)
        for i in range(c + 1, n):
            row = a[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, n):
                    row[j] = (row[j] - f * prow[j]) % p
    return det % p
