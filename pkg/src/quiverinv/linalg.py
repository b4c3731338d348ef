"""Exact dense matrices over QQ, GF(p), or polynomial rings over them."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import kernels
from .fields import QQ, Field, FieldMismatchError, PrimeField, Residue, field_of
from .poly import Poly, PolyRing


class SingularMatrixError(ArithmeticError):
    pass


def ring_of(x):
    if isinstance(x, Poly):
        return x.ring
    return field_of(x)


class ExactMatrix:
    """Immutable rows x cols matrix; entries stored row-major in a tuple."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries, ring=None):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if ring is None:
            ring = _common_ring(entries)
        entries = tuple(ring(e) for e in entries)
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.ring = ring

    @classmethod
    def from_rows(cls, rows, ring=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r], ring)

    @classmethod
    def identity(cls, n: int, ring=QQ):
        one, zero = ring.one, ring.zero
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring=QQ):
        return cls(rows, cols, [ring.zero] * (rows * cols), ring)

    @classmethod
    def diag(cls, values, ring=None):
        values = list(values)
        ring = ring or _common_ring(values)
        n = len(values)
        return cls(n, n, [values[i] if i == j else ring.zero for i in range(n) for j in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise FieldMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.ring)

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries], self.ring)

    def scale(self, c):
        c = self.ring(c)
        return ExactMatrix(self.rows, self.cols, [c * a for a in self.entries], self.ring)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        zero = self.ring.zero
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = zero
                for t in range(k):
                    x = arow[t]
                    if x:
                        y = b[t * m + j]
                        if y:
                            s = s + x * y
                out.append(s)
        return ExactMatrix(n, m, out, self.ring)

    def transpose(self):
        return ExactMatrix(self.cols, self.rows,
                           [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
                           self.ring)

    def kron(self, other):
        """Kronecker product: (A kron B)[(u, a), (v, b)] = A[u, v] * B[a, b]."""
        self._check_ring(other)
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        out = []
        for u in range(r1):
            for a in range(r2):
                for v in range(c1):
                    x = self.entries[u * c1 + v]
                    for b in range(c2):
                        out.append(x * other.entries[a * c2 + b])
        return ExactMatrix(r1 * r2, c1 * c2, out, self.ring)

    def map(self, fn, ring):
        return ExactMatrix(self.rows, self.cols, [fn(e) for e in self.entries], ring)

    def change_ring(self, ring):
        return ExactMatrix(self.rows, self.cols, [ring(e) for e in self.entries], ring)

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        if isinstance(self.ring, Field):
            return _det_field(self)
        # division-free for polynomial entries
        return berkowitz(self)[0] * (-1) ** self.rows

    def inverse(self):
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        if not isinstance(self.ring, Field):
            raise TypeError("inverse needs field entries")
        n = self.rows
        aug = [list(self.row(i)) + [self.ring.one if i == j else self.ring.zero for j in range(n)]
               for i in range(n)]
        rank, pivots, red = _rref_field(aug, 2 * n, self.ring)
        if rank < n or pivots[n - 1] >= n:
            raise SingularMatrixError("matrix is singular")
        return ExactMatrix(n, n, [red[i][n + j] for i in range(n) for j in range(n)], self.ring)

    def __pow__(self, e: int):
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = ExactMatrix.identity(self.rows, self.ring)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.ring) == (other.rows, other.cols, other.ring) and \
            self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self):
        return not any(self.entries)

    def __repr__(self):
        return f"ExactMatrix({self.to_rows()!r})"


def _common_ring(entries):
    ring = None
    for e in entries:
        if isinstance(e, int) and not isinstance(e, bool):
            continue
        r = ring_of(e)
        if ring is None:
            ring = r
        elif r != ring:
            raise FieldMismatchError(f"{ring!r} vs {r!r}")
    return ring or QQ


def block_diag(blocks, ring=None):
    blocks = list(blocks)
    ring = ring or (blocks[0].ring if blocks else QQ)
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[ring.zero] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return ExactMatrix(n, m, [e for r in out for e in r], ring)


# --- elimination -----------------------------------------------------------

def _rref_field(rows, ncols, field):
    """Gauss-Jordan over a field; returns (rank, pivots, nonzero reduced rows)."""
    if isinstance(field, PrimeField):
        ints = [[int(field(x).v) for x in r] for r in rows]
        rank, pivots, red = kernels.rref_mod_p(ints, ncols, field.p)
        return rank, pivots, [[Residue(x, field.p) for x in r] for r in red]
    a = [[Fraction(x) for x in r] for r in rows]
    nrows = len(a)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][c]), -1)
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [x * inv for x in prow]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != rank:
                row = a[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        rank += 1
    return rank, pivots, a[:rank]


def _det_field(M: ExactMatrix):
    n = M.rows
    if n == 0:
        return M.ring.one
    if isinstance(M.ring, PrimeField):
        return Residue(kernels.det_mod_p([[x.v for x in M.row(i)] for i in range(n)], M.ring.p), M.ring.p)
    # fraction-free Bareiss on a common-denominator integer matrix
    rows = [list(M.row(i)) for i in range(n)]
    den = 1
    int_rows = []
    for r in rows:
        l = lcm(*[Fraction(x).denominator for x in r]) if r else 1
        den *= l
        int_rows.append([int(Fraction(x) * l) for x in r])
    return Fraction(_bareiss(int_rows), den)


def _bareiss(a):
    n = len(a)
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank_and_nullspace(M: ExactMatrix):
    """Rank of M and a basis of its right nullspace.

    The basis is the reduced echelon basis: one vector per free column, with
    a 1 in that free column and 0 in every other free column.
    """
    if not isinstance(M.ring, Field):
        raise TypeError("rank_and_nullspace needs field entries")
    _check_uniform(M)
    rank, pivots, red = _rref_field(M.to_rows(), M.cols, M.ring)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    zero, one = M.ring.zero, M.ring.one
    basis = []
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return rank, basis


def _check_uniform(M):
    for e in M.entries:
        if ring_of(e) != M.ring:
            raise FieldMismatchError(f"entry {e!r} not in {M.ring!r}")


def rank(M: ExactMatrix) -> int:
    if isinstance(M.ring, PrimeField):
        return kernels.rank_mod_p([[x.v for x in M.row(i)] for i in range(M.rows)], M.cols, M.ring.p)
    return _rref_field(M.to_rows(), M.cols, M.ring)[0]


# --- characteristic polynomial ---------------------------------------------

def berkowitz(M: ExactMatrix):
    """Coefficients c_0..c_n of det(t*I - M), c_j the coefficient of t^j.

    Division-free, so it works over polynomial rings and in every
    characteristic.
    """
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    ring = M.ring
    one, zero = ring.one, ring.zero
    a = [list(M.row(i)) for i in range(n)]
    # vec holds coefficients of det(tI - A_k) for the trailing k x k block,
    # highest power first
    vec = [one]
    for k in range(n - 1, -1, -1):
        # A_k = a[k:, k:] with a_kk, R = a[k, k+1:], C = a[k+1:, k], S = a[k+1:, k+1:]
        size = n - k
        akk = a[k][k]
        R = a[k][k + 1:]
        C = [a[i][k] for i in range(k + 1, n)]
        diags = [one, -akk]
        w = C
        for _ in range(size - 1):
            s = zero
            for x, y in zip(R, w):
                if x and y:
                    s = s + x * y
            diags.append(-s)
            # w <- S w
            w = [_dot(a[i][k + 1:], w, zero) for i in range(k + 1, n)]
        # Toeplitz (size+1) x size lower triangular, first column diags
        new = []
        for i in range(size + 1):
            s = zero
            for j in range(min(i + 1, size)):
                d = diags[i - j]
                v = vec[j]
                if d and v:
                    s = s + d * v
            new.append(s)
        vec = new
    # vec = [1, c1, ..., cn] with det(tI-M) = t^n + c1 t^(n-1) + ... + cn
    return list(reversed(vec))


def _dot(xs, ys, zero):
    s = zero
    for x, y in zip(xs, ys):
        if x and y:
            s = s + x * y
    return s
