"""Hilbert series truncations of invariant rings via torus characters.

The degree-d piece of K[Rep(Q, alpha)] is a GL(alpha)-module with a good
filtration, so its invariant dimension is the multiplicity of the trivial
(or det-power) Schur character in its torus character, whatever the field.

Weight conventions: the coordinate function x^a_{pq} has torus weight +e_q on
the tail group and -e_p on the head group.  A semi-invariant of weight sigma
satisfies f(g^-1 . V) = chi_sigma(g) f(V), so it has torus weight
sigma(i)(1, ..., 1) on group i; sigma is positive at sources of the
determinant on the Kronecker quiver.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb

from .characters import (
    TorusCharacter, conjugate, partitions, schur_dimension, weight_multiplicity,
)
from .quiver import (
    CyclicQuiverError, Quiver, check_dimension, check_weight, kronecker_quiver,
    longest_path_lengths, loop_quiver, quiver_from_json,
)

KINDS = ("matrix-invariants", "matrix-semi-invariants", "quiver-invariants", "quiver-semi-invariants")


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    quiver: Quiver
    alpha: tuple  # (vertex, dim) pairs in vertex order
    sigma: tuple = None
    n: int = None
    m: int = None

    @property
    def dimension(self) -> dict:
        return dict(self.alpha)

    @property
    def weight(self) -> dict:
        return dict(self.sigma) if self.sigma is not None else None

    @property
    def special(self) -> bool:
        """True for SL-type rings (sum over det-power weights)."""
        return self.kind == "matrix-semi-invariants"

    def to_json(self) -> dict:
        if self.kind in ("matrix-invariants", "matrix-semi-invariants"):
            return {"kind": self.kind, "n": self.n, "m": self.m}
        out = {"kind": self.kind, **self.quiver.to_json(), "dimension": dict(self.alpha)}
        if self.sigma is not None:
            out["sigma"] = dict(self.sigma)
        return out

    def label(self) -> str:
        if self.kind == "matrix-invariants":
            return f"S({self.n},{self.m})"
        if self.kind == "matrix-semi-invariants":
            return f"R({self.n},{self.m})"
        if self.kind == "quiver-invariants":
            return f"I(Q,{list(dict(self.alpha).values())})"
        return f"SI(Q,{list(dict(self.alpha).values())},{list(dict(self.sigma).values())})"


def matrix_invariants(n: int, m: int) -> RingDescriptor:
    """S(n, m): m-tuples of n x n matrices under simultaneous conjugation."""
    _positive(n=n, m=m)
    Q = loop_quiver(m)
    return RingDescriptor("matrix-invariants", Q, (("v", n),), n=n, m=m)


def matrix_semi_invariants(n: int, m: int) -> RingDescriptor:
    """R(n, m): m-tuples under (A, B) . X = A X B^-1 with A, B in SL_n."""
    _positive(n=n, m=m)
    Q = kronecker_quiver(m)
    return RingDescriptor("matrix-semi-invariants", Q, (("x", n), ("y", n)), n=n, m=m)


def quiver_invariants(Q: Quiver, alpha) -> RingDescriptor:
    alpha = check_dimension(Q, alpha)
    return RingDescriptor("quiver-invariants", Q, tuple(alpha.items()))


def quiver_semi_invariants(Q: Quiver, alpha, sigma) -> RingDescriptor:
    alpha = check_dimension(Q, alpha)
    sigma = check_weight(Q, sigma)
    if not Q.is_acyclic():
        raise CyclicQuiverError("semi-invariant series are supported for acyclic quivers only")
    return RingDescriptor("quiver-semi-invariants", Q, tuple(alpha.items()), tuple(sigma.items()))


def descriptor_from_json(obj: dict) -> RingDescriptor:
    kind = obj["kind"]
    if kind == "matrix-invariants":
        return matrix_invariants(int(obj["n"]), int(obj["m"]))
    if kind == "matrix-semi-invariants":
        return matrix_semi_invariants(int(obj["n"]), int(obj["m"]))
    Q, alpha = quiver_from_json(obj)
    if kind == "quiver-invariants":
        return quiver_invariants(Q, alpha)
    if kind == "quiver-semi-invariants":
        return quiver_semi_invariants(Q, alpha, obj["sigma"])
    raise ValueError(f"unknown ring kind {kind!r}")


def _positive(**params):
    for k, v in params.items():
        if int(v) < 1:
            raise ValueError(f"{k} must be positive")


# --- characters of the coordinate ring --------------------------------------

def coordinate_weights(Q: Quiver, alpha) -> list:
    """Torus weight of every coordinate function, in coordinate order."""
    alpha = check_dimension(Q, alpha)
    offsets, off = {}, 0
    for v in Q.vertices:
        offsets[v] = off
        off += alpha[v]
    width = off
    out = []
    for a in Q.arrows:
        for p in range(alpha[a.head]):
            for q in range(alpha[a.tail]):
                w = [0] * width
                w[offsets[a.tail] + q] += 1
                w[offsets[a.head] + p] -= 1
                out.append(tuple(w))
    return out


@lru_cache(maxsize=64)
def _sym_monomials(weights: tuple, width: int, D: int):
    """Full monomial expansions of Sym^d for d = 0..D of the span of weights.

    Multiplies the truncated series prod_w (1 - t z^w)^-1 one factor at a time.
    """
    layers = [{(0,) * width: 1}] + [{} for _ in range(D)]
    for w in weights:
        for k in range(1, D + 1):
            cur, prev = layers[k], layers[k - 1]
            for e, c in prev.items():
                key = tuple(a + b for a, b in zip(e, w))
                cur[key] = cur.get(key, 0) + c
    return tuple(layers)


def rep_character(Q: Quiver, alpha, d: int) -> TorusCharacter:
    """Character of K[Rep(Q, alpha)]_d, one torus variable group per vertex."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    alpha = check_dimension(Q, alpha)
    groups = tuple(alpha[v] for v in Q.vertices)
    weights = tuple(coordinate_weights(Q, alpha))
    layers = _sym_monomials(weights, sum(groups), d)
    return TorusCharacter.from_monomials(groups, layers[d], check=False)


def _det_power_target(groups, cs):
    return [tuple([c] * n) for c, n in zip(cs, groups)]


def si_degree_window(R: RingDescriptor, k: int) -> int:
    """Largest polynomial degree that can carry weight k*sigma (acyclic quivers)."""
    sigma, alpha = R.weight, R.dimension
    L = max(longest_path_lengths(R.quiver).values(), default=0)
    return k * sum(abs(sigma[v]) * alpha[v] for v in alpha) * L


def invariant_dim(R: RingDescriptor, d: int) -> int:
    if d < 0:
        raise ValueError("degree must be >= 0")
    Q, alpha = R.quiver, R.dimension
    groups = tuple(alpha[v] for v in Q.vertices)
    if R.kind in ("matrix-invariants", "quiver-invariants"):
        ch = rep_character(Q, alpha, d)
        return weight_multiplicity(ch, _det_power_target(groups, [0] * len(groups)))
    if R.kind == "matrix-semi-invariants":
        ch = rep_character(Q, alpha, d)
        total = 0
        for cs in product(range(-d, d + 1), repeat=len(groups)):
            # the total weight on each group is fixed by the character
            total += weight_multiplicity(ch, _det_power_target(groups, cs))
        return total
    if R.kind == "quiver-semi-invariants":
        sigma = R.weight
        target = _det_power_target(groups, [d * sigma[v] for v in Q.vertices])
        total = 0
        for e in range(si_degree_window(R, d) + 1):
            total += weight_multiplicity(rep_character(Q, alpha, e), target)
        return total
    raise ValueError(f"unknown ring kind {R.kind!r}")


@dataclass
class HilbertTruncation:
    descriptor: RingDescriptor
    coefficients: list
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"ring": self.descriptor.to_json(), "coefficients": list(self.coefficients)}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def to_csv(self) -> str:
        lines = ["degree,dimension"]
        lines += [f"{d},{h}" for d, h in enumerate(self.coefficients)]
        return "\n".join(lines) + "\n"


def _dim_task(args):
    R, d = args
    return invariant_dim(R, d)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QI_THREADS", "1")))
    except ValueError:
        return 1


def hilbert_truncation(R: RingDescriptor, D: int, workers: int = None) -> HilbertTruncation:
    if D < 0:
        raise ValueError("truncation order must be >= 0")
    workers = workers or worker_count()
    if workers > 1 and D > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            coeffs = list(ex.map(_dim_task, [(R, d) for d in range(D + 1)]))
    else:
        coeffs = [invariant_dim(R, d) for d in range(D + 1)]
    meta = {}
    if R.kind == "quiver-semi-invariants":
        meta["degree_window"] = "e <= k * sum_i |sigma(i)| alpha_i * (longest path length)"
        meta["windows"] = [si_degree_window(R, k) for k in range(D + 1)]
    return HilbertTruncation(R, coeffs, meta)


# --- Cauchy filtration as a dimension identity -------------------------------

def cauchy_dimensions(t: int, p: int, q: int):
    """(dim Sym^t(K^p (x) K^q), sum over |lam| = t of dim L_lam(K^p) dim L_lam(K^q)).

    L_lam(V) is the dual Weyl module of the conjugate partition.
    """
    lhs = comb(p * q + t - 1, t)
    rhs = 0
    for lam in partitions(t):
        mu = conjugate(lam)
        rhs += schur_dimension(mu, p) * schur_dimension(mu, q)
    return lhs, rhs


def cauchy_dimension_check(t: int, p: int, q: int) -> bool:
    if t < 0 or p < 1 or q < 1:
        raise ValueError("need t >= 0 and p, q >= 1")
    lhs, rhs = cauchy_dimensions(t, p, q)
    return lhs == rhs
