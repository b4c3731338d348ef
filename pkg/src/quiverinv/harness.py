"""Generation checks, the Lie-algebra dimension oracle, degree-bound formulas,
a brute-force null-cone check and separation-witness search."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

from .fields import QQ, GF, Field, PrimeField
from .hilbert import RingDescriptor, invariant_dim, si_degree_window
from .invariants import (
    NotHomogeneousError, WordInvariant, as_matrices, char_coeffs, cycle_generators,
    enumerate_word_generators, word_product,
)
from .linalg import ExactMatrix
from .nullcone import BlockSemiInvariant, generic_block_determinant, nullcone_member, rng_for
from .poly import Poly, degree_of
from .quiver import (
    MatrixTuple, Quiver, check_dimension, check_weight, generic_rep, path_counts,
    sigma_norm, sigma_parts,
)
from .sparse import EchelonBasis, integer_rank

DEFAULT_CAP = 20000
ENUMERATION_CAP = 3 ** 8


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""


# --- Lie-algebra oracle --------------------------------------------------------

def _coordinates(R: RingDescriptor):
    """(vertex offsets, per-coordinate (arrow tail, head, p, q, arrow index base))."""
    Q, alpha = R.quiver, R.dimension
    coords = []
    for a in Q.arrows:
        base = len(coords)
        for p in range(alpha[a.head]):
            for q in range(alpha[a.tail]):
                coords.append((a.tail, a.head, p, q, base))
    return coords


def _root_derivations(R: RingDescriptor, coords):
    """For each off-diagonal E_ij at each vertex, the map coordinate -> [(coordinate, coeff)].

    With (X . V)(a) = X_ha V(a) - V(a) X_ta, the derivation sends
    x[a]_pq to -(X . V)(a)_pq.
    """
    alpha = R.dimension
    out = []
    for v in R.quiver.vertices:
        k = alpha[v]
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                dmap = {}
                for idx, (ta, ha, p, q, base) in enumerate(coords):
                    cols = alpha[ta]
                    terms = []
                    if ha == v and p == i:
                        terms.append((base + j * cols + q, -1))
                    if ta == v and q == j:
                        terms.append((base + p * cols + i, 1))
                    if terms:
                        dmap[idx] = terms
                out.append(dmap)
    return out


def _weight_filter(R: RingDescriptor, coords, k: int):
    """Predicate on exponent multisets: the Cartan part of the invariance condition."""
    Q, alpha = R.quiver, R.dimension
    offsets, off = {}, 0
    for v in Q.vertices:
        offsets[v] = off
        off += alpha[v]
    wt = []
    for ta, ha, p, q, _ in coords:
        wt.append((offsets[ta] + q, offsets[ha] + p))
    groups = [(offsets[v], alpha[v]) for v in Q.vertices]
    if R.kind == "quiver-semi-invariants":
        sig = R.weight
        targets = [k * sig[v] for v in Q.vertices]
    else:
        targets = None

    def ok(combo):
        w = [0] * off
        for c in combo:
            t, h = wt[c]
            w[t] += 1
            w[h] -= 1
        for g, (o, n) in enumerate(groups):
            block = w[o:o + n]
            if R.special:
                if any(x != block[0] for x in block):
                    return False
            elif any(x != (targets[g] if targets else 0) for x in block):
                return False
        return True

    return ok


def monomial_space_dim(R: RingDescriptor, d: int) -> int:
    """Size of the monomial space the oracle would work on for series degree d."""
    N = len(_coordinates(R))
    if R.kind == "quiver-semi-invariants":
        return sum(comb(N + e - 1, e) for e in range(si_degree_window(R, d) + 1))
    return comb(N + d - 1, d)


def lie_invariant_dim(R: RingDescriptor, d: int, cap: int = DEFAULT_CAP) -> int:
    """Dimension of the degree-d invariants by the infinitesimal criterion, over QQ.

    Diagonal Lie-algebra elements act on monomials by their weight, so they are
    imposed by restricting to monomials of the right weight; the root vectors
    give the linear system whose nullity is returned.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    size = monomial_space_dim(R, d)
    if size > cap:
        raise ResourceLimitError(f"monomial space of size {size} exceeds the cap {cap}")
    coords = _coordinates(R)
    N = len(coords)
    degrees = range(si_degree_window(R, d) + 1) if R.kind == "quiver-semi-invariants" else [d]
    ok = _weight_filter(R, coords, d)
    derivs = _root_derivations(R, coords)
    total = 0
    for e in degrees:
        cols = [combo for combo in combinations_with_replacement(range(N), e) if ok(combo)]
        if not cols:
            continue
        rows = {}
        for ci, combo in enumerate(cols):
            exps = {}
            for c in combo:
                exps[c] = exps.get(c, 0) + 1
            for g, dmap in enumerate(derivs):
                for var, mult in exps.items():
                    for new, coef in dmap.get(var, ()):
                        e2 = dict(exps)
                        e2[var] -= 1
                        e2[new] = e2.get(new, 0) + 1
                        key = (g, tuple(sorted((x, y) for x, y in e2.items() if y)))
                        row = rows.setdefault(key, {})
                        row[ci] = row.get(ci, 0) + mult * coef
        total += len(cols) - integer_rank(list(rows.values()))
    return total


# --- generators ----------------------------------------------------------------

class PolynomialGenerator:
    """The degree-d homogeneous component of an arbitrary evaluator."""

    def __init__(self, f, degree: int, label: str = None):
        self.f = f
        self.degree = degree
        self.label = label or getattr(f, "label", None) or repr(f)

    def evaluate(self, V):
        val = self.f.evaluate(V) if hasattr(self.f, "evaluate") else self.f(V)
        if isinstance(val, Poly):
            return val.homogeneous_part(self.degree)
        return val if self.degree == 0 else 0

    def to_json(self):
        return {"component_of": self.label, "degree": self.degree}


@dataclass(frozen=True)
class BlockCoefficient:
    """Coefficient of a T-monomial in det(sum T_i (x) X_i), T generic of size d."""

    n: int
    m: int
    d: int
    exponents: tuple

    @property
    def degree(self):
        return self.d * self.n

    def evaluate(self, X):
        if not isinstance(X, MatrixTuple):
            X = MatrixTuple(as_matrices(X))
        P, _ = generic_block_determinant(X, self.d)
        return P.coefficient(self.exponents)

    @property
    def label(self):
        return f"block_coefficient(d={self.d}, t^{list(self.exponents)})"

    def to_json(self):
        return {"block_size": self.d, "t_exponents": list(self.exponents)}


def block_coefficient_family(n: int, m: int, d: int = 1) -> list:
    """All T-coefficients of det(sum T_i (x) X_i) that are nonzero on the generic tuple."""
    from .quiver import generic_tuple
    X, _ = generic_tuple(n, m, QQ)
    P, T = generic_block_determinant(X, d)
    return [BlockCoefficient(n, m, d, T.unpack(k)) for k in sorted(P.terms, reverse=True)]


def standard_generators(R: RingDescriptor, D: int) -> list:
    """sigma_j of words (matrix invariants) or of oriented cycles (quiver invariants)."""
    if R.kind == "matrix-invariants":
        return enumerate_word_generators(R.n, R.m, D)
    if R.kind == "quiver-invariants":
        return cycle_generators(R.quiver, R.dimension, D)
    raise ValueError(f"no standard generator family for {R.kind}")


# --- degree profiles -------------------------------------------------------------

@dataclass
class DegreeProfile:
    descriptor: RingDescriptor
    field: Field
    max_degree: int
    rows: list  # dicts with degree, target, spanned, new
    generators: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def beta(self) -> int:
        return max((r["degree"] for r in self.rows if r["new"] > 0), default=0)

    @property
    def complete(self) -> bool:
        return all(r["spanned"] == r["target"] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "ring": self.descriptor.to_json(),
            "field": self.field.to_json(),
            "max_degree": self.max_degree,
            "rows": [dict(r) for r in self.rows],
            "beta_observed": self.beta,
            "scan_halted_at": self.max_degree,
            "summary": f"beta >= {self.beta} observed, scan halted at {self.max_degree}",
            "generated_through_max_degree": self.complete,
            "generators": [g.to_json() if hasattr(g, "to_json") else repr(g) for g in self.generators],
            "notes": list(self.notes),
        }

    def to_csv(self) -> str:
        lines = ["degree,target,spanned,new"]
        lines += [f"{r['degree']},{r['target']},{r['spanned']},{r['new']}" for r in self.rows]
        return "\n".join(lines) + "\n"


def _declared_degree(g):
    d = getattr(g, "degree", None)
    return d() if callable(d) else d


def generation_profile(R: RingDescriptor, generators, D: int, field: Field = QQ,
                       targets=None, cap: int = DEFAULT_CAP) -> DegreeProfile:
    """Degree-by-degree span of the subalgebra generated by `generators`.

    The degree-d part of the subalgebra is spanned by g * A_{d - deg g} over
    generators g of degree < d, plus the degree-d generators.  That is the
    same space as the sum of products A_e A_{d-e}, and much cheaper.
    Targets come from the character engine, which does not depend on the field.
    """
    if D < 0:
        raise ValueError("max degree must be >= 0")
    field = field or QQ
    if R.kind == "quiver-semi-invariants":
        raise ValueError("generation profiles are graded by polynomial degree; use S, R or I rings")
    V, ring = generic_rep(R.quiver, R.dimension, field)
    N = ring.nvars
    for d in range(D + 1):
        if comb(N + d - 1, d) > cap:
            raise ResourceLimitError(f"degree {d} monomial space exceeds the cap {cap}")
    by_degree = {}
    kept = []
    for g in generators:
        val = g.evaluate(V)
        if not isinstance(val, Poly):
            val = ring(val)
        degs = val.degrees()
        want = _declared_degree(g)
        if len(degs) > 1 or (want is not None and degs and degs != {want}):
            raise NotHomogeneousError(f"generator {g} has terms of degree {sorted(degs)}")
        deg = want if want is not None else (degs.pop() if degs else None)
        if deg is None or deg > D or not val:
            continue
        if deg == 0:
            continue
        by_degree.setdefault(deg, []).append(val)
        kept.append(g)
    if targets is None:
        targets = [invariant_dim(R, d) for d in range(D + 1)]
    rows = [{"degree": 0, "target": targets[0], "spanned": 1, "new": targets[0] - 1}]
    basis = {0: [ring.one]}
    for d in range(1, D + 1):
        E = EchelonBasis(field)
        for e, gens in by_degree.items():
            if e >= d:
                continue
            for g in gens:
                for b in basis[d - e]:
                    E.add((g * b).terms)
        products = len(E)
        for g in by_degree.get(d, []):
            E.add(g.terms)
        spanned = len(E)
        if spanned > targets[d]:
            raise ValueError(f"degree {d}: span {spanned} exceeds invariant dimension {targets[d]}; "
                             "some generator is not invariant")
        rows.append({"degree": d, "target": targets[d], "spanned": spanned, "new": targets[d] - products})
        basis[d] = [Poly(ring, v) for v in E.vectors()]
    notes = []
    if isinstance(field, PrimeField):
        notes.append("targets imported from characteristic 0")
        gaps = [r["degree"] for r in rows if r["spanned"] < r["target"]]
        if gaps:
            notes.append(f"generation gap or characteristic dependence in degrees {gaps}")
    return DegreeProfile(R, field, D, rows, kept, notes)


# --- degree bounds ---------------------------------------------------------------

BOUND_KINDS = ("mi", "msi", "msi-strong", "quiver-inv", "si1", "si2", "sep", "derksen-style")

_REQUIRED = {
    "mi": ("n", "m"), "msi": ("n", "m"), "msi-strong": ("n", "m"),
    "quiver-inv": ("N", "M"), "si1": ("quiver", "alpha", "sigma"),
    "si2": ("alpha",), "sep": ("n",), "derksen-style": ("d", "r"),
}


@dataclass
class BoundRequest:
    kind: str
    params: dict

    def __post_init__(self):
        if self.kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        missing = [p for p in _REQUIRED[self.kind] if self.params.get(p) is None]
        if missing:
            raise ValueError(f"bound {self.kind} needs {', '.join(missing)}")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for k, v in sorted(self.params.items()):
            if v is None:
                continue
            out[k] = v.to_json() if isinstance(v, Quiver) else v
        return out


def _int_if_integral(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def bound_value(req: BoundRequest):
    """Exact value of the requested degree bound (int, or Fraction when not integral)."""
    p = req.params
    k = req.kind
    if k in ("mi", "msi", "msi-strong", "sep"):
        n = int(p["n"])
        if n < 1:
            raise ValueError("n must be positive")
    if k == "mi":
        return (int(p["m"]) + 1) * n ** 4
    if k == "msi":
        return int(p["m"]) * n ** 4
    if k == "msi-strong":
        if n < 2:
            raise ValueError("msi-strong needs n >= 2")
        return int(p["m"]) * n ** 3 * (n - 1)
    if k == "quiver-inv":
        return (int(p["M"]) + 1) * int(p["N"]) ** 4
    if k == "sep":
        return n ** 6
    if k == "derksen-style":
        ds = [int(x) for x in p["d"]]
        if not ds:
            raise ValueError("derksen-style needs at least one generator degree")
        return max(max(ds), sum(ds) + int(p["r"]))
    if k == "si1":
        Q = p["quiver"]
        alpha = check_dimension(Q, p["alpha"])
        sigma = check_weight(Q, p["sigma"])
        b = path_counts(Q)
        plus, minus = sigma_parts(sigma)
        m = sum(plus[x] * b[(x, y)] * minus[y] for x in Q.vertices for y in Q.vertices)
        n = sigma_norm(sigma, alpha)
        return _int_if_integral(m * n ** 3)
    if k == "si2":
        alpha = p["alpha"]
        vals = list(alpha.values()) if isinstance(alpha, dict) else list(alpha)
        nv = int(p.get("vertices") or len(vals))
        if nv < 2:
            raise ValueError("si2 needs at least 2 vertices (the (n-1) power degenerates)")
        r = p.get("r")
        if r is None:
            Q = p.get("quiver")
            if Q is None:
                raise ValueError("si2 needs r or a quiver to default it")
            a = check_dimension(Q, alpha)
            r = sum(a[x.tail] * a[x.head] for x in Q.arrows)
        a1 = sum(int(v) for v in vals)
        return _int_if_integral(Fraction(3 * int(r) * nv ** 2 * a1 ** (4 * nv), 128 * (nv - 1) ** (4 * nv - 4)))
    raise ValueError(f"unknown bound kind {k!r}")


# --- null cone by enumeration ---------------------------------------------------

def _all_tuples(n: int, m: int, F: PrimeField):
    vals = [F(i) for i in range(F.p)]
    for entries in product(vals, repeat=m * n * n):
        mats = [ExactMatrix(n, n, list(entries[i * n * n:(i + 1) * n * n]), F) for i in range(m)]
        yield MatrixTuple(mats, n)


def nullcone_zero_locus_check(n: int, m: int, q: int, family, cap: int = ENUMERATION_CAP) -> bool:
    """Compare the common zero set of `family` with the null cone on all of GF(q)^(m n^2)."""
    total = q ** (m * n * n)
    if total > cap:
        raise ResourceLimitError(f"{total} tuples exceed the enumeration cap {cap}")
    F = GF(q)
    for X in _all_tuples(n, m, F):
        zero = all(not s.evaluate(X) for s in family)
        if zero != nullcone_member(X, exact=True).member:
            return False
    return True


# --- separation -----------------------------------------------------------------

@dataclass
class SeparationWitness:
    invariant: WordInvariant
    value_x: object
    value_y: object
    specialization: list = None

    def to_json(self, ring=QQ) -> dict:
        out = {"invariant": self.invariant.to_json(), "degree": self.invariant.degree,
               "value_x": ring.format(self.value_x), "value_y": ring.format(self.value_y)}
        if self.specialization is not None:
            out["specialization"] = self.specialization
        return out


def _search(X: MatrixTuple, Y: MatrixTuple, D: int):
    cache = {}
    for w in enumerate_word_generators(X.n, X.m, D):
        if w.word not in cache:
            cache[w.word] = (char_coeffs(word_product(w.word, X.matrices)),
                             char_coeffs(word_product(w.word, Y.matrices)))
        cx, cy = cache[w.word]
        if cx[w.j] != cy[w.j]:
            return SeparationWitness(w, cx[w.j], cy[w.j])
    return None


def _specialize(X: MatrixTuple, C):
    ring = X.ring
    out = []
    for row in C:
        acc = ExactMatrix.zeros(X.n, X.n, ring)
        for c, M in zip(row, X.matrices):
            if c:
                acc = acc + M.scale(ring(c))
        out.append(acc)
    return MatrixTuple(out, X.n)


def separate(X: MatrixTuple, Y: MatrixTuple, D: int, mode: str = "direct",
             seed=0, samples: int = 8):
    """First word invariant of degree <= D separating X and Y, or None.

    mode="reduced" (meaningful for m > n^2) searches invariants of n^2-tuples
    pulled back along seeded linear maps K^m -> K^(n^2).
    """
    if (X.n, X.m) != (Y.n, Y.m):
        raise ValueError("tuples of different shapes")
    if D < 1:
        raise ValueError("D must be >= 1")
    if mode not in ("direct", "reduced"):
        raise ValueError(f"unknown mode {mode!r}")
    N = X.n * X.n
    if mode == "direct" or X.m <= N:
        return _search(X, Y, D)
    for s in range(samples):
        rng = rng_for(seed, "specialization", s)
        C = [[rng.randint(-5, 5) for _ in range(X.m)] for _ in range(N)]
        w = _search(_specialize(X, C), _specialize(Y, C), D)
        if w is not None:
            w.specialization = C
            return w
    return None
