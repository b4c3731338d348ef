"""Weyl-symmetric Laurent polynomials on products of tori, and Schur characters.

A :class:`TorusCharacter` lives on a product of tori of ranks
``groups = (n_1, ..., n_k)``.  An exponent vector is a flat tuple of length
``sum(groups)``; the segment belonging to each group is stored sorted in
weakly decreasing order, one entry per Weyl orbit.  The stored coefficient is
the coefficient of every monomial in that orbit.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import prod


class NotAGoodCharacterError(ValueError):
    """A decomposition into Schur characters produced a negative multiplicity."""


class DominantWeight(tuple):
    """Weakly decreasing integer tuple; parts may be negative."""

    def __new__(cls, parts):
        parts = tuple(int(x) for x in parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    def shift(self, c: int) -> "DominantWeight":
        return DominantWeight(x + c for x in self)

    def __repr__(self):
        return f"DominantWeight({tuple(self)!r})"


def _segments(groups):
    out, start = [], 0
    for n in groups:
        out.append((start, start + n))
        start += n
    return out


def canonical(exps, groups) -> tuple:
    out = []
    for a, b in _segments(groups):
        out.extend(sorted(exps[a:b], reverse=True))
    return tuple(out)


def is_dominant(exps, groups) -> bool:
    for a, b in _segments(groups):
        for i in range(a, b - 1):
            if exps[i] < exps[i + 1]:
                return False
    return True


def _distinct_perms(seg):
    return set(permutations(seg))


def orbit(exps, groups):
    """All exponent vectors in the Weyl orbit of exps."""
    parts = [_distinct_perms(tuple(exps[a:b])) for a, b in _segments(groups)]
    for combo in product(*parts):
        yield tuple(x for seg in combo for x in seg)


def orbit_size(exps, groups) -> int:
    from math import factorial
    total = 1
    for a, b in _segments(groups):
        seg = exps[a:b]
        counts = {}
        for x in seg:
            counts[x] = counts.get(x, 0) + 1
        total *= factorial(len(seg)) // prod(factorial(c) for c in counts.values())
    return total


class TorusCharacter:
    __slots__ = ("groups", "terms")

    def __init__(self, groups, terms=None):
        self.groups = tuple(groups)
        self.terms = {}
        width = sum(self.groups)
        for k, v in (terms or {}).items():
            k = tuple(k)
            if len(k) != width:
                raise ValueError("exponent length does not match groups")
            if v:
                c = canonical(k, self.groups)
                if c != k:
                    raise ValueError(f"{k} is not an orbit representative")
                self.terms[k] = int(v)

    @classmethod
    def from_monomials(cls, groups, monomials, check=True) -> "TorusCharacter":
        """Build from a full monomial expansion {exponents: coefficient}."""
        groups = tuple(groups)
        terms = {k: v for k, v in monomials.items() if v and is_dominant(k, groups)}
        ch = cls(groups, terms)
        if check:
            for k, v in monomials.items():
                if v and ch.terms.get(canonical(k, groups), 0) != v:
                    raise ValueError(f"not Weyl-symmetric at {k}")
            if sum(1 for v in monomials.values() if v) != sum(orbit_size(k, groups) for k in ch.terms):
                raise ValueError("not Weyl-symmetric")
        return ch

    @classmethod
    def constant(cls, groups, c=1):
        groups = tuple(groups)
        return cls(groups, {(0,) * sum(groups): c})

    def coefficient(self, exps) -> int:
        return self.terms.get(canonical(tuple(exps), self.groups), 0)

    def monomials(self) -> dict:
        out = {}
        for k, v in self.terms.items():
            for e in orbit(k, self.groups):
                out[e] = v
        return out

    def dimension(self) -> int:
        """Value at z = 1."""
        return sum(v * orbit_size(k, self.groups) for k, v in self.terms.items())

    def _check(self, other):
        if not isinstance(other, TorusCharacter) or other.groups != self.groups:
            raise ValueError("characters on different tori")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return TorusCharacter(self.groups, {k: v for k, v in t.items() if v})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int) -> "TorusCharacter":
        return TorusCharacter(self.groups, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        # coefficient at a dominant target only needs one factor fully expanded
        out = {}
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        big_full = big.monomials()
        for k, v in small.terms.items():
            for e in orbit(k, self.groups):
                for f, w in big_full.items():
                    s = tuple(a + b for a, b in zip(e, f))
                    if is_dominant(s, self.groups):
                        out[s] = out.get(s, 0) + v * w
        return TorusCharacter(self.groups, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def shift(self, amounts) -> "TorusCharacter":
        """Multiply by prod_g (z_g1 ... z_gn)^amounts[g]."""
        add = []
        for n, c in zip(self.groups, amounts):
            add.extend([c] * n)
        return TorusCharacter(self.groups, {tuple(a + b for a, b in zip(k, add)): v for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TorusCharacter) and self.groups == other.groups and self.terms == other.terms

    def __repr__(self):
        return f"TorusCharacter({self.groups}, {self.terms})"


# --- Schur characters ------------------------------------------------------

@lru_cache(maxsize=None)
def _schur_monomials(lam: tuple, n: int):
    """Full monomial expansion of s_lam(z_1..z_n) for a partition lam (len n).

    Branching rule: s_lam(z_1..z_n) = sum over mu interlacing lam of
    s_mu(z_1..z_{n-1}) z_n^{|lam| - |mu|}.
    """
    if n == 0:
        return {(): 1}
    if n == 1:
        return {(lam[0],): 1}
    out = {}
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(n - 1)]
    total = sum(lam)
    for mu in product(*ranges):
        sub = _schur_monomials(tuple(mu), n - 1)
        last = total - sum(mu)
        for k, v in sub.items():
            key = k + (last,)
            out[key] = out.get(key, 0) + v
    return out


def schur_character(lam, n: int) -> TorusCharacter:
    lam = DominantWeight(lam)
    if len(lam) != n:
        raise ValueError(f"weight {tuple(lam)} has length {len(lam)}, expected {n}")
    if n == 0:
        return TorusCharacter((0,), {(): 1})
    c = -min(lam) if min(lam) < 0 else 0
    mons = _schur_monomials(tuple(lam.shift(c)), n)
    terms = {tuple(x - c for x in k): v for k, v in mons.items() if is_dominant(k, (n,))}
    return TorusCharacter((n,), terms)


def schur_product_character(weights, groups) -> TorusCharacter:
    """Outer product of Schur characters, one weight per group."""
    groups = tuple(groups)
    if len(weights) != len(groups):
        raise ValueError("one weight per group expected")
    per = [schur_character(w, n).terms for w, n in zip(weights, groups)]
    terms = {}
    for combo in product(*[list(t.items()) for t in per]):
        key = tuple(x for k, _ in combo for x in k)
        terms[key] = prod(v for _, v in combo)
    return TorusCharacter(groups, terms)


def schur_decompose(f: TorusCharacter):
    """Write f as an integer combination of products of Schur characters.

    Returns a list of (weights per group, multiplicity) sorted by weight,
    descending.  Raises NotAGoodCharacterError on a negative multiplicity.
    """
    groups = f.groups
    if f.is_zero():
        return []
    segs = _segments(groups)
    shifts = []
    for a, b in segs:
        low = min((k[b - 1] for k in f.terms if b > a), default=0) if b > a else 0
        shifts.append(-low if low < 0 else 0)
    rest = dict(f.shift(shifts).terms)
    out = []
    while rest:
        top = max(rest)
        mult = rest[top]
        if mult < 0:
            raise NotAGoodCharacterError(f"negative multiplicity {mult} at weight {top}")
        weights = tuple(DominantWeight(top[a:b]) for a, b in segs)
        for k, v in schur_product_character(weights, groups).terms.items():
            r = rest.get(k, 0) - mult * v
            if r:
                rest[k] = r
            else:
                rest.pop(k, None)
        out.append((tuple(w.shift(-s) for w, s in zip(weights, shifts)), mult))
    return out


@lru_cache(maxsize=None)
def _signed_perms(n: int):
    out = []
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        out.append((p, sign))
    return tuple(out)


def weight_multiplicity(f: TorusCharacter, target) -> int:
    """Multiplicity of the Schur product character of ``target`` in f.

    ``target`` is one dominant weight per group.  Uses the alternant identity
    m_lam = sum_w sign(w) f[lam + rho - w(rho)] instead of a full decomposition.
    """
    groups = f.groups
    if len(target) != len(groups):
        raise ValueError("one weight per group expected")
    per_group = []
    for lam, n in zip(target, groups):
        lam = DominantWeight(lam)
        if len(lam) != n:
            raise ValueError("weight length does not match group rank")
        rho = list(range(n - 1, -1, -1))
        options = []
        for p, sign in _signed_perms(n):
            options.append((tuple(lam[i] + rho[i] - rho[p[i]] for i in range(n)), sign))
        per_group.append(options)
    total = 0
    terms = f.terms
    for combo in product(*per_group):
        exps = tuple(x for e, _ in combo for x in e)
        c = terms.get(canonical(exps, groups))
        if c:
            total += c * prod(s for _, s in combo)
    if total < 0:
        raise NotAGoodCharacterError(f"negative multiplicity {total} at {target}")
    return total


# --- partitions and dimensions ----------------------------------------------

def partitions(t: int, max_part=None, max_len=None):
    """Partitions of t as weakly decreasing tuples."""
    if max_part is None:
        max_part = t
    if t == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(t, max_part), 0, -1):
        for rest in partitions(t - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def conjugate(lam) -> tuple:
    lam = [x for x in lam if x > 0]
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def schur_dimension(lam, n: int) -> int:
    """dim of the GL_n module with highest weight lam (hook-content formula)."""
    lam = [x for x in lam if x > 0]
    if len(lam) > n:
        return 0
    num, den = 1, 1
    conj = conjugate(lam)
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den
