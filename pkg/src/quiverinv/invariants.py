"""Characteristic coefficients and the word/cycle generators of matrix and quiver invariants.

sigma_j(A) is the coefficient of t^j in det(t*I - A), signs included, so
trace = -sigma_{n-1} and det = (-1)^n sigma_0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .fields import QQ
from .linalg import ExactMatrix, berkowitz
from .poly import Poly, degree_of
from .quiver import MatrixTuple, Quiver, QuiverRep, check_dimension, generic_rep, generic_tuple


class NotHomogeneousError(ValueError):
    pass


def char_coeffs(A: ExactMatrix) -> list:
    """[sigma_0, ..., sigma_n] for det(t*I - A); sigma_n = 1."""
    if not A.is_square:
        raise ValueError("char_coeffs needs a square matrix")
    return berkowitz(A)


def as_matrices(X):
    """The matrix sequence of a MatrixTuple, or of a QuiverRep in arrow order."""
    if isinstance(X, QuiverRep):
        return [X[a.name] for a in X.quiver.arrows]
    if isinstance(X, MatrixTuple):
        return list(X.matrices)
    return list(X)


def min_rotation(word) -> tuple:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word))) if word else word


@dataclass(frozen=True)
class WordInvariant:
    """sigma_j(X_{w1} X_{w2} ... X_{wk}) on n x n matrices; word indices are 1-based."""

    word: tuple
    j: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))
        if not self.word:
            raise ValueError("word must be nonempty")
        if any(i < 1 for i in self.word):
            raise ValueError("word indices are 1-based")
        if not 0 <= self.j <= self.n:
            raise ValueError(f"j={self.j} outside [0, {self.n}]")

    @property
    def degree(self) -> int:
        return len(self.word) * (self.n - self.j)

    def evaluate(self, X):
        return eval_word_invariant(self, X)

    def to_json(self) -> dict:
        return {"word": list(self.word), "j": self.j}

    def __str__(self):
        return f"sigma_{self.j}({''.join('X%d' % i for i in self.word)})"


def word_product(word, mats):
    m = len(mats)
    P = None
    for i in word:
        if not 1 <= i <= m:
            raise IndexError(f"word index {i} out of range 1..{m}")
        P = mats[i - 1] if P is None else P @ mats[i - 1]
    return P


def eval_word_invariant(w: WordInvariant, X):
    mats = as_matrices(X)
    if mats and mats[0].rows != w.n:
        raise ValueError(f"invariant is for {w.n}x{w.n} matrices, got {mats[0].rows}")
    return char_coeffs(word_product(w.word, mats))[w.j]


def canonical_words(m: int, length: int):
    for word in product(range(1, m + 1), repeat=length):
        if min_rotation(word) == word:
            yield word


def enumerate_word_generators(n: int, m: int, D: int) -> list:
    """All (word, j) with j < n and |word|(n - j) <= D, words up to rotation."""
    out = []
    if D < 1 or n < 1:
        return out
    for length in range(1, D + 1):
        for word in canonical_words(m, length):
            for j in range(n):
                if length * (n - j) <= D:
                    out.append(WordInvariant(word, j, n))
    out.sort(key=lambda w: (w.degree, len(w.word), w.word, w.j))
    return out


@dataclass(frozen=True)
class CycleInvariant:
    """sigma_j(V(a_k) ... V(a_1)) for an oriented cycle a_1 ... a_k.

    The composite is an endomorphism of the space at the tail of a_1.
    """

    cycle: tuple
    j: int
    base_dim: int

    @property
    def degree(self) -> int:
        return len(self.cycle) * (self.base_dim - self.j)

    def evaluate(self, V: QuiverRep):
        P = None
        for name in self.cycle:
            M = V[name]
            P = M if P is None else M @ P
        return char_coeffs(P)[self.j]

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "j": self.j}

    def __str__(self):
        return f"sigma_{self.j}({'.'.join(reversed(self.cycle))})"


def oriented_cycles(Q: Quiver, max_length: int):
    """Closed walks of length <= max_length, one per rotation class.

    The representative is the rotation that is lexicographically smallest in
    arrow indices.
    """
    index = {a.name: i for i, a in enumerate(Q.arrows)}
    out_arrows = {v: [a for a in Q.arrows if a.tail == v] for v in Q.vertices}
    found = []

    def extend(path, start):
        if len(path) > max_length:
            return
        last_head = path[-1].head
        if last_head == start:
            idx = tuple(index[a.name] for a in path)
            if min_rotation(idx) == idx:
                found.append(tuple(a.name for a in path))
        if len(path) == max_length:
            return
        for a in out_arrows[last_head]:
            # rotations starting at a larger arrow index are never minimal
            if index[a.name] >= index[path[0].name]:
                extend(path + [a], start)

    for a in Q.arrows:
        extend([a], a.tail)
    found.sort(key=lambda c: (len(c), [index[x] for x in c]))
    return found


def cycle_generators(Q: Quiver, alpha, D: int) -> list:
    alpha = check_dimension(Q, alpha)
    out = []
    if D < 1:
        return out
    for cyc in oriented_cycles(Q, D):
        base = alpha[Q.arrow(cyc[0]).tail]
        for j in range(base):
            if len(cyc) * (base - j) <= D:
                out.append(CycleInvariant(cyc, j, base))
    out.sort(key=lambda c: (c.degree, len(c.cycle), [Q.arrows.index(Q.arrow(x)) for x in c.cycle], c.j))
    return out


def phi_star_eval(f, X: MatrixTuple):
    """f(I, X_1, ..., X_m): pull back along X -> (I, X)."""
    n = X.n
    fn = getattr(f, "n", None)
    if fn is not None and fn != n:
        raise ValueError(f"f is defined on {fn}x{fn} matrices, got {n}x{n}")
    fm = getattr(f, "m", None)
    if fm is not None and fm != X.m + 1:
        raise ValueError(f"f takes {fm} matrices, got {X.m} + identity")
    ident = ExactMatrix.identity(n, X.ring)
    return _call(f, MatrixTuple([ident] + list(X.matrices), n))


def _call(f, X):
    if hasattr(f, "evaluate"):
        return f.evaluate(X)
    return f(X)


class PhiStar:
    """phi^* f as an evaluator on m-tuples."""

    def __init__(self, f, m=None):
        self.f = f
        self.n = getattr(f, "n", None)
        self.m = m if m is not None else (getattr(f, "m", None) - 1 if getattr(f, "m", None) else None)

    def evaluate(self, X):
        if isinstance(X, QuiverRep):
            X = MatrixTuple(as_matrices(X))
        return phi_star_eval(self.f, X)

    __call__ = evaluate


def expand_polynomial(f, n: int, m: int, base=QQ) -> Poly:
    """f on the generic m-tuple of n x n matrices, as a polynomial."""
    X, R = generic_tuple(n, m, base)
    val = _call(f, X)
    if not isinstance(val, Poly):
        val = R(val)
    return val


def expand_invariant(f, n: int, m: int, d: int, base=QQ) -> list:
    """Coefficients of f in the degree-d monomial basis.

    Variables x^{(i)}_{ab} are ordered by (i, a, b); monomials of degree d are
    listed in descending lex order of their exponent vectors.
    """
    P = expand_polynomial(f, n, m, base)
    bad = {degree_of(k) for k in P.terms} - {d}
    if bad:
        raise NotHomogeneousError(f"f has terms of degree {sorted(bad)}, expected only {d}")
    basis = P.ring.homogeneous_basis(d)
    zero = base.zero
    return [P.terms.get(k, zero) for k in basis]


def expand_on_rep(f, Q: Quiver, alpha, base=QQ) -> Poly:
    """f evaluated on the generic representation of (Q, alpha)."""
    V, R = generic_rep(Q, alpha, base)
    val = _call(f, V)
    if not isinstance(val, Poly):
        val = R(val)
    return val
