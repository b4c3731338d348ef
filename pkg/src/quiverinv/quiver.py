"""Quivers, dimension vectors, representations and the base-change action."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, Field, field_from_json
from .linalg import ExactMatrix, SingularMatrixError, block_diag
from .poly import PolyRing


class CyclicQuiverError(ValueError):
    """Raised when an operation needs an acyclic quiver."""


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


class Quiver:
    """A finite directed multigraph with ordered vertices and arrows.

    The vertex order fixes the block layout used by :func:`embed_rep`.
    """

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.tail not in self.vertices or a.head not in self.vertices:
                raise ValueError(f"arrow {a.name} references an unknown vertex")
            arrs.append(a)
        self.arrows = tuple(arrs)
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow names")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def is_acyclic(self) -> bool:
        try:
            topological_order(self)
        except CyclicQuiverError:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "tail": a.tail, "head": a.head} for a in self.arrows],
        }

    def __eq__(self, other):
        return isinstance(other, Quiver) and (self.vertices, self.arrows) == (other.vertices, other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[(a.name, a.tail, a.head) for a in self.arrows]})"


def loop_quiver(m: int) -> Quiver:
    """One vertex with m loops; Rep = m-tuples of square matrices."""
    return Quiver(["v"], [(f"X{i + 1}", "v", "v") for i in range(m)])


def kronecker_quiver(m: int) -> Quiver:
    """Vertices x, y with m arrows x -> y."""
    return Quiver(["x", "y"], [(f"X{i + 1}", "x", "y") for i in range(m)])


def check_dimension(Q: Quiver, alpha) -> dict:
    alpha = dict(alpha)
    if set(alpha) != set(Q.vertices):
        raise ValueError("dimension vector must be defined on every vertex")
    if any(int(v) < 0 for v in alpha.values()):
        raise ValueError("dimension vector entries must be nonnegative")
    return {v: int(alpha[v]) for v in Q.vertices}


def check_weight(Q: Quiver, sigma) -> dict:
    sigma = dict(sigma)
    if set(sigma) != set(Q.vertices):
        raise ValueError("weight must be defined on every vertex")
    return {v: int(sigma[v]) for v in Q.vertices}


class QuiverRep:
    """A point of Rep(Q, alpha): one alpha(ha) x alpha(ta) matrix per arrow."""

    def __init__(self, quiver: Quiver, dimension, matrices, ring=None):
        self.quiver = quiver
        self.dimension = check_dimension(quiver, dimension)
        mats = {}
        rings = set()
        for a in quiver.arrows:
            if a.name not in matrices:
                raise ValueError(f"missing matrix for arrow {a.name}")
            M = matrices[a.name]
            if not isinstance(M, ExactMatrix):
                M = ExactMatrix.from_rows(M, ring) if M else ExactMatrix.zeros(
                    self.dimension[a.head], self.dimension[a.tail], ring or QQ)
            shape = (self.dimension[a.head], self.dimension[a.tail])
            if (M.rows, M.cols) != shape:
                raise ValueError(f"arrow {a.name}: expected shape {shape}, got {(M.rows, M.cols)}")
            mats[a.name] = M
            rings.add(M.ring)
        if len(rings) > 1:
            from .fields import FieldMismatchError
            raise FieldMismatchError(f"matrices over different rings: {rings}")
        self.ring = rings.pop() if rings else (ring or QQ)
        self.matrices = mats

    def __getitem__(self, arrow_name):
        return self.matrices[arrow_name]

    def __eq__(self, other):
        return isinstance(other, QuiverRep) and self.quiver == other.quiver and \
            self.dimension == other.dimension and self.matrices == other.matrices

    def __repr__(self):
        return f"QuiverRep({self.quiver!r}, {self.dimension}, {self.matrices})"


class GroupElement:
    """An element of GL(alpha): one invertible matrix per vertex."""

    def __init__(self, mats: dict):
        self.mats = dict(mats)
        for v, A in self.mats.items():
            if not A.is_square:
                raise ValueError(f"vertex {v}: matrix is not square")

    def __getitem__(self, v):
        return self.mats[v]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement({v: self.mats[v] @ other.mats[v] for v in self.mats})

    def inverse(self) -> "GroupElement":
        return GroupElement({v: A.inverse() for v, A in self.mats.items()})

    @classmethod
    def identity(cls, Q: Quiver, alpha, ring=QQ):
        alpha = check_dimension(Q, alpha)
        return cls({v: ExactMatrix.identity(alpha[v], ring) for v in Q.vertices})

    def block_diagonal(self, Q: Quiver):
        return block_diag([self.mats[v] for v in Q.vertices])


def _inverse_or_raise(A: ExactMatrix):
    try:
        return A.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("group element has a singular component") from None


def act(g: GroupElement, V: QuiverRep) -> QuiverRep:
    """Arrow a carries g(ha) V(a) g(ta)^-1."""
    invs = {}
    for v in V.quiver.vertices:
        A = g[v]
        if A.rows != V.dimension[v]:
            raise ValueError(f"vertex {v}: group component has size {A.rows}, expected {V.dimension[v]}")
        invs[v] = _inverse_or_raise(A)
    mats = {a.name: g[a.head] @ V[a.name] @ invs[a.tail] for a in V.quiver.arrows}
    return QuiverRep(V.quiver, V.dimension, mats)


def chi_sigma(g: GroupElement, sigma):
    """prod_i det(g(i))^sigma(i)."""
    result = None
    for v, s in sigma.items():
        d = g[v].det()
        if not d:
            raise SingularMatrixError(f"vertex {v}: singular component")
        term = d ** s
        result = term if result is None else result * term
    return result if result is not None else QQ.one


def topological_order(Q: Quiver) -> list:
    indeg = {v: 0 for v in Q.vertices}
    for a in Q.arrows:
        indeg[a.head] += 1
    ready = [v for v in Q.vertices if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in Q.arrows:
            if a.tail == v:
                indeg[a.head] -= 1
                if indeg[a.head] == 0:
                    ready.append(a.head)
    if len(order) != len(Q.vertices):
        raise CyclicQuiverError("quiver has an oriented cycle")
    return order


def path_counts(Q: Quiver, include_trivial: bool = True) -> dict:
    """b[(x, y)] = number of directed paths from x to y.

    The length-0 path at x counts toward b[(x, x)] unless include_trivial is
    False.  Raises CyclicQuiverError if Q has an oriented cycle.
    """
    order = topological_order(Q)
    b = {}
    for x in reversed(order):
        for y in Q.vertices:
            total = 1 if x == y else 0
            for a in Q.arrows:
                if a.tail == x:
                    total += b[(a.head, y)]
            b[(x, y)] = total
    if not include_trivial:
        for x in Q.vertices:
            b[(x, x)] -= 1
    return b


def longest_path_lengths(Q: Quiver) -> dict:
    """Length of the longest path starting at each vertex (acyclic Q)."""
    order = topological_order(Q)
    out = {}
    for x in reversed(order):
        out[x] = max((1 + out[a.head] for a in Q.arrows if a.tail == x), default=0)
    return out


def sigma_norm(sigma, alpha) -> Fraction:
    """|sigma|_alpha = (1/2) sum_i |sigma(i)| alpha_i."""
    if set(sigma) != set(alpha):
        raise ValueError("weight and dimension vector on different vertex sets")
    return Fraction(sum(abs(int(sigma[v])) * int(alpha[v]) for v in alpha), 2)


def sigma_parts(sigma):
    """(sigma_plus, sigma_minus), both nonnegative, sigma = plus - minus."""
    return ({v: max(s, 0) for v, s in sigma.items()}, {v: max(-s, 0) for v, s in sigma.items()})


# --- matrix tuples and the embedding ---------------------------------------

class MatrixTuple:
    """m square matrices of size n over one ring."""

    def __init__(self, matrices, n=None):
        mats = tuple(m if isinstance(m, ExactMatrix) else ExactMatrix.from_rows(m) for m in matrices)
        if n is None:
            if not mats:
                raise ValueError("empty tuple needs an explicit size")
            n = mats[0].rows
        for M in mats:
            if (M.rows, M.cols) != (n, n):
                raise ValueError(f"expected {n}x{n} matrices")
        if len({M.ring for M in mats}) > 1:
            from .fields import FieldMismatchError
            raise FieldMismatchError("matrices over different rings")
        self.n = n
        self.m = len(mats)
        self.matrices = mats
        self.ring = mats[0].ring if mats else QQ

    def __getitem__(self, i):
        return self.matrices[i]

    def __len__(self):
        return self.m

    def __iter__(self):
        return iter(self.matrices)

    def change_ring(self, ring):
        return MatrixTuple([M.change_ring(ring) for M in self.matrices], self.n)

    def scale(self, c):
        return MatrixTuple([M.scale(c) for M in self.matrices], self.n)

    def conjugate(self, A, Ainv=None):
        Ainv = Ainv if Ainv is not None else A.inverse()
        return MatrixTuple([A @ M @ Ainv for M in self.matrices], self.n)

    def left_right(self, A, B):
        """X_i -> A X_i B^-1."""
        Binv = B.inverse()
        return MatrixTuple([A @ M @ Binv for M in self.matrices], self.n)

    def __eq__(self, other):
        return isinstance(other, MatrixTuple) and self.n == other.n and self.matrices == other.matrices

    def __repr__(self):
        return f"MatrixTuple({[M.to_rows() for M in self.matrices]!r})"


def embed_rep(V: QuiverRep) -> MatrixTuple:
    """Rep(Q, alpha) -> Hom(W, W)^M, W the direct sum of the vertex spaces.

    Arrow a becomes the N x N matrix (N = sum alpha) that is V(a) in block
    (ha, ta) and zero elsewhere; blocks follow the quiver's vertex order.
    """
    Q = V.quiver
    offsets, off = {}, 0
    for v in Q.vertices:
        offsets[v] = off
        off += V.dimension[v]
    N = off
    zero = V.ring.zero
    out = []
    for a in Q.arrows:
        M = V[a.name]
        rows = [[zero] * N for _ in range(N)]
        r0, c0 = offsets[a.head], offsets[a.tail]
        for i in range(M.rows):
            for j in range(M.cols):
                rows[r0 + i][c0 + j] = M[i, j]
        out.append(ExactMatrix(N, N, [e for r in rows for e in r], V.ring))
    return MatrixTuple(out, N)


def coordinate_names(Q: Quiver, alpha) -> list:
    """Coordinate functions x[a]_{pq}, arrows in order, entries row-major."""
    alpha = check_dimension(Q, alpha)
    names = []
    for a in Q.arrows:
        for p in range(alpha[a.head]):
            for q in range(alpha[a.tail]):
                names.append(f"{a.name}_{p + 1}{q + 1}")
    return names


def generic_rep(Q: Quiver, alpha, base: Field = QQ):
    """The representation whose entries are the coordinate functions."""
    alpha = check_dimension(Q, alpha)
    names = coordinate_names(Q, alpha)
    R = PolyRing(base, len(names), names)
    gens = R.gens()
    mats, k = {}, 0
    for a in Q.arrows:
        r, c = alpha[a.head], alpha[a.tail]
        mats[a.name] = ExactMatrix(r, c, gens[k:k + r * c], R)
        k += r * c
    return QuiverRep(Q, alpha, mats), R


def generic_tuple(n: int, m: int, base: Field = QQ):
    """Generic m-tuple of n x n matrices; variables ordered by (i, a, b)."""
    V, R = generic_rep(loop_quiver(m), {"v": n}, base)
    return MatrixTuple([V[f"X{i + 1}"] for i in range(m)], n), R


# --- JSON -----------------------------------------------------------------

def rep_from_json(obj) -> QuiverRep:
    if isinstance(obj, str):
        obj = json.loads(obj)
    Q = Quiver(obj["vertices"], [(a["name"], a["tail"], a["head"]) for a in obj["arrows"]])
    alpha = check_dimension(Q, obj["dimension"])
    field = field_from_json(obj.get("field", {"kind": "Q"}))
    mats = {}
    raw = obj.get("matrices", {})
    for a in Q.arrows:
        shape = (alpha[a.head], alpha[a.tail])
        rows = raw.get(a.name)
        if rows is None:
            mats[a.name] = ExactMatrix.zeros(*shape, field)
            continue
        if any(not isinstance(x, str) for r in rows for x in r):
            raise ValueError(f"arrow {a.name}: matrix entries must be strings")
        M = ExactMatrix.from_rows([[field.parse(x) for x in r] for r in rows], field) if rows else \
            ExactMatrix.zeros(*shape, field)
        if (M.rows, M.cols) != shape:
            raise ValueError(f"arrow {a.name}: expected shape {shape}")
        mats[a.name] = M
    return QuiverRep(Q, alpha, mats, field)


def rep_to_json(V: QuiverRep) -> dict:
    field = V.ring
    out = V.quiver.to_json()
    out["dimension"] = dict(V.dimension)
    out["field"] = field.to_json()
    out["matrices"] = {a.name: [[field.format(x) for x in r] for r in V[a.name].to_rows()]
                       for a in V.quiver.arrows}
    return out


def quiver_from_json(obj):
    """Quiver and dimension vector from the representation schema (matrices optional)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    Q = Quiver(obj["vertices"], [(a["name"], a["tail"], a["head"]) for a in obj["arrows"]])
    alpha = check_dimension(Q, obj["dimension"]) if "dimension" in obj else None
    return Q, alpha
