"""Block-determinant semi-invariants of m-tuples under SL_n x SL_n, and null-cone membership.

For coefficient blocks T_1..T_m of size d the function
X -> det(T_1 (x) X_1 + ... + T_m (x) X_m) is a semi-invariant of degree dn:
    f(A X B^-1) = det(A)^d det(B)^-d f(X).
A tuple lies in the null cone iff every such determinant with d = n - 1
vanishes identically in the entries of the T_i.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .fields import GF, LARGE_PRIMES, QQ, Field, PrimeField, Residue
from .linalg import ExactMatrix, SingularMatrixError
from .poly import PolyRing
from .quiver import MatrixTuple

EXACT_MAX_N = 3
EXACT_MAX_M = 3


def rng_for(seed, *path) -> random.Random:
    """Deterministic child generator for (seed, path); independent of call order."""
    return random.Random(":".join(str(x) for x in (seed,) + path))


@dataclass(frozen=True)
class BlockSemiInvariant:
    d: int
    T: tuple
    n: int = None

    def __post_init__(self):
        T = tuple(t if isinstance(t, ExactMatrix) else ExactMatrix.from_rows(t) for t in self.T)
        object.__setattr__(self, "T", T)
        if self.d < 1:
            raise ValueError("block size must be >= 1")
        for t in T:
            if (t.rows, t.cols) != (self.d, self.d):
                raise ValueError(f"coefficient blocks must be {self.d}x{self.d}")
        if len({t.ring for t in T}) > 1:
            raise ValueError("coefficient blocks over different fields")

    @property
    def m(self):
        return len(self.T)

    @property
    def degree(self):
        if self.n is None:
            raise ValueError("degree needs the matrix size n")
        return self.d * self.n

    def evaluate(self, X):
        return eval_block_det(self, X)

    def to_json(self):
        ring = self.T[0].ring
        return {"d": self.d, "T": [[[ring.format(x) for x in r] for r in t.to_rows()] for t in self.T]}


def block_matrix(T, X: MatrixTuple) -> ExactMatrix:
    """sum_i T_i (x) X_i, with T_i coerced into the ring of X."""
    ring = X.ring
    total = None
    for Ti, Xi in zip(T, X.matrices):
        Ti = Ti if Ti.ring == ring else Ti.change_ring(ring)
        K = Ti.kron(Xi)
        total = K if total is None else total + K
    return total


def eval_block_det(s: BlockSemiInvariant, X):
    from .invariants import as_matrices
    if not isinstance(X, MatrixTuple):
        X = MatrixTuple(as_matrices(X))
    if s.m != X.m:
        raise ValueError(f"semi-invariant takes {s.m} matrices, got {X.m}")
    if s.n is not None and s.n != X.n:
        raise ValueError(f"semi-invariant is for {s.n}x{s.n} matrices, got {X.n}")
    return block_matrix(s.T, X).det()


def weight_check(s: BlockSemiInvariant, A: ExactMatrix, B: ExactMatrix, X: MatrixTuple) -> bool:
    """f(A X B^-1) == det(A)^d det(B)^-d f(X)."""
    dA, dB = A.det(), B.det()
    if not dA or not dB:
        raise SingularMatrixError("group element is singular")
    lhs = eval_block_det(s, X.left_right(A, B))
    rhs = dA ** s.d * dB ** (-s.d) * eval_block_det(s, X)
    return lhs == rhs


def nullcone_family(n: int, m: int, r: int, seed, field: Field = None) -> list:
    """r block semi-invariants with d = n - 1 and seeded uniform blocks.

    Over a prime field blocks are uniform residues; over QQ they are uniform
    integers in [-10, 10].
    """
    if n < 2:
        raise ValueError("null-cone family needs n >= 2 (R(1, m) is a polynomial ring)")
    field = field or GF(LARGE_PRIMES[0])
    d = n - 1
    out = []
    for k in range(r):
        rng = rng_for(seed, "family", k)
        blocks = []
        for _ in range(m):
            if isinstance(field, PrimeField):
                vals = [field(rng.randrange(field.p)) for _ in range(d * d)]
            else:
                vals = [field(rng.randint(-10, 10)) for _ in range(d * d)]
            blocks.append(ExactMatrix(d, d, vals, field))
        out.append(BlockSemiInvariant(d, tuple(blocks), n))
    return out


def coefficient_family(n: int, m: int, field: Field = QQ) -> list:
    """Scalar (d = 1) members det(sum t_i X_i) at t = e_i and t = e_i + e_j.

    For n = 2 these span the coefficients of the quadratic form
    t -> det(sum t_i X_i).
    """
    out = []
    vecs = [[1 if k == i else 0 for k in range(m)] for i in range(m)]
    vecs += [[1 if k in (i, j) else 0 for k in range(m)] for i in range(m) for j in range(i + 1, m)]
    for v in vecs:
        out.append(BlockSemiInvariant(1, tuple(ExactMatrix(1, 1, [field(c)], field) for c in v), n))
    return out


@dataclass
class NullConeVerdict:
    member: bool
    mode: str
    d: int
    seed: object = None
    trials: int = 0
    prime: int = None
    witness: dict = None
    error_bound: Fraction = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"member": self.member, "mode": self.mode, "block_size": self.d}
        if self.mode == "randomized":
            out.update({"seed": self.seed, "trials": self.trials, "prime": self.prime})
        if self.witness is not None:
            out["witness"] = self.witness
        if self.error_bound is not None:
            eb = self.error_bound
            out["error_bound"] = f"{eb.numerator}/{eb.denominator}"
            # floor(log2) of the bound, for readability
            out["error_bound_log2_at_most"] = eb.numerator.bit_length() - eb.denominator.bit_length() + 1
        out.update(self.extra)
        return out


def _to_prime_field(X: MatrixTuple, p: int):
    F = GF(p)
    try:
        return [[[F(x).v for x in M.row(i)] for i in range(M.rows)] for M in X.matrices]
    except ZeroDivisionError:
        return None


def _block_rows_mod_p(T_ints, X_ints, n, d, p):
    N = d * n
    rows = [[0] * N for _ in range(N)]
    for Ti, Xi in zip(T_ints, X_ints):
        for u in range(d):
            for v in range(d):
                t = Ti[u][v]
                if not t:
                    continue
                for a in range(n):
                    ra = rows[u * n + a]
                    xa = Xi[a]
                    for b in range(n):
                        if xa[b]:
                            ra[v * n + b] = (ra[v * n + b] + t * xa[b]) % p
    return rows


def nullcone_member(X: MatrixTuple, trials: int = 40, seed=0, exact: bool = False) -> NullConeVerdict:
    n, m = X.n, X.m
    d = max(1, n - 1)
    if exact:
        return _exact_member(X, d)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(X.ring, PrimeField):
        raise ValueError("randomized mode needs a rational tuple; use exact mode over GF(q)")
    for p in LARGE_PRIMES:
        X_ints = _to_prime_field(X, p)
        if X_ints is None:
            continue
        for t in range(trials):
            rng = rng_for(seed, "trial", t)
            T_ints = [[[rng.randrange(p) for _ in range(d)] for _ in range(d)] for _ in range(m)]
            value = kernels.det_mod_p(_block_rows_mod_p(T_ints, X_ints, n, d, p), p)
            if value:
                witness = {"trial": t, "blocks": T_ints, "value": value}
                return NullConeVerdict(False, "randomized", d, seed, t + 1, p, witness)
        bound = Fraction(d * n, p) ** trials
        return NullConeVerdict(True, "randomized", d, seed, trials, p, None, bound)
    raise ArithmeticError("no prime in the table reduces the tuple")


def replay_witness(verdict: NullConeVerdict, X: MatrixTuple) -> int:
    """Recompute the block determinant recorded in a non-membership witness."""
    w = verdict.witness
    if verdict.mode == "randomized":
        p = verdict.prime
        return kernels.det_mod_p(_block_rows_mod_p(w["blocks"], _to_prime_field(X, p), X.n, verdict.d, p), p)
    F = X.ring
    T = tuple(ExactMatrix.from_rows([[F(c) for c in r] for r in blk], F) for blk in w["blocks"])
    return eval_block_det(BlockSemiInvariant(verdict.d, T), X)


def generic_block_determinant(X: MatrixTuple, d: int):
    """det(sum T_i (x) X_i) as a polynomial in the entries of generic T_i."""
    ring = X.ring
    names = [f"t{i + 1}_{u + 1}{v + 1}" for i in range(X.m) for u in range(d) for v in range(d)]
    R = PolyRing(ring, len(names), names)
    gens = R.gens()
    T = [ExactMatrix(d, d, gens[i * d * d:(i + 1) * d * d], R) for i in range(X.m)]
    XR = MatrixTuple([M.map(R, R) for M in X.matrices], X.n)
    return block_matrix(T, XR).det(), R


def _exact_member(X: MatrixTuple, d: int) -> NullConeVerdict:
    if X.n > EXACT_MAX_N or X.m > EXACT_MAX_M:
        raise ValueError(f"exact mode supports n <= {EXACT_MAX_N}, m <= {EXACT_MAX_M}")
    P, R = generic_block_determinant(X, d)
    if not P:
        return NullConeVerdict(True, "exact", d)
    # a nonzero polynomial of degree dn cannot vanish on all of {0..dn}^k
    F = X.ring
    deg = d * X.n
    rng = rng_for(0, "exact-witness")
    k = R.nvars
    for attempt in range(10000):
        pt = [rng.randint(0, deg) for _ in range(k)] if attempt else [1] * k
        val = P.evaluate([F(c) for c in pt])
        if val:
            blocks = [[[pt[i * d * d + u * d + v] for v in range(d)] for u in range(d)] for i in range(X.m)]
            return NullConeVerdict(False, "exact", d, witness={"blocks": blocks, "value": F.format(val)})
    return NullConeVerdict(False, "exact", d, witness={"polynomial_terms": len(P.terms)})
