"""Sparse multivariate polynomials over an exact ring.

Monomials are packed into a single int, ``BITS`` bits per variable, so that
multiplying monomials is integer addition.  Coefficients may themselves be
polynomials over a smaller ring, which gives towers such as
``QQ[x][t]`` used by the block-determinant families.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

BITS = 8
MASK = (1 << BITS) - 1
MAX_DEGREE = MASK - 1


class PolyRing:
    def __init__(self, base, nvars: int, names=None):
        self.base = base
        self.nvars = nvars
        self.names = list(names) if names is not None else [f"x{i}" for i in range(nvars)]
        if len(self.names) != nvars:
            raise ValueError("names/nvars mismatch")

    # ring interface shared with Field
    def __call__(self, c) -> "Poly":
        if isinstance(c, Poly) and c.ring is self:
            return c
        c = self.base(c)
        return Poly(self, {0: c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {0: self.base.one})

    def gen(self, i: int) -> "Poly":
        return Poly(self, {1 << (BITS * i): self.base.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def pack(self, exps) -> int:
        key = 0
        for i, e in enumerate(exps):
            if e:
                if e > MAX_DEGREE or e < 0:
                    raise OverflowError("exponent out of range")
                key |= e << (BITS * i)
        return key

    def unpack(self, key: int) -> tuple:
        return tuple((key >> (BITS * i)) & MASK for i in range(self.nvars))

    def monomial(self, exps, coeff=None) -> "Poly":
        c = self.base.one if coeff is None else self.base(coeff)
        return Poly(self, {self.pack(exps): c} if c else {})

    def homogeneous_basis(self, d: int) -> list:
        """Packed monomials of degree d in descending lex order of exponents."""
        keys = []
        for combo in combinations_with_replacement(range(self.nvars), d):
            exps = [0] * self.nvars
            for v in combo:
                exps[v] += 1
            keys.append(self.pack(exps))
        # combinations come out in ascending variable order, which is
        # descending lex on exponent tuples
        return keys

    def is_over(self, other_ring) -> bool:
        """True if other_ring occurs strictly below self in the coefficient tower."""
        b = self.base
        while isinstance(b, PolyRing):
            if b is other_ring:
                return True
            b = b.base
        return False

    def __repr__(self):
        return f"{self.base!r}[{', '.join(self.names)}]"


def degree_of(key: int) -> int:
    # digit sum in base 2**BITS; congruent to key mod 255 and < 255
    return key % MASK


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _other_terms(self, other):
        """Terms of other in self.ring, or None if other belongs to a larger ring."""
        if isinstance(other, Poly):
            if other.ring is self.ring:
                return other.terms
            if other.ring.is_over(self.ring):
                return None
        c = self.ring.base(other)
        return {0: c} if c else {}

    def __add__(self, other):
        o = self._other_terms(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.items():
            s = t.get(k)
            if s is None:
                t[k] = v
            else:
                s = s + v
                if s:
                    t[k] = s
                else:
                    del t[k]
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._other_terms(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.items():
            s = t.get(k)
            if s is None:
                t[k] = -v
            else:
                s = s - v
                if s:
                    t[k] = s
                else:
                    del t[k]
        return Poly(self.ring, t)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            a, b = self.terms, other.terms
            if len(a) < len(b):
                a, b = b, a
            t = {}
            get = t.get
            for kb, vb in b.items():
                for ka, va in a.items():
                    k = ka + kb
                    s = get(k)
                    t[k] = va * vb if s is None else s + va * vb
            return Poly(self.ring, {k: v for k, v in t.items() if v})
        if isinstance(other, Poly) and other.ring.is_over(self.ring):
            return NotImplemented
        c = other if isinstance(other, Poly) else self.ring.base(other)
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {k: v * c for k, v in self.terms.items() if v * c})

    def __rmul__(self, other):
        if isinstance(other, Poly) and other.ring is not self.ring and not other.ring.is_over(self.ring):
            c = other
        else:
            c = self.ring.base(other)
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {k: c * v for k, v in self.terms.items() if c * v})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            return self.terms == other.terms
        try:
            o = self._other_terms(other)
        except Exception:
            return NotImplemented
        if o is None:
            return NotImplemented
        return self.terms == o

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self) -> bool:
        return not self.terms or list(self.terms) == [0]

    def constant(self):
        return self.terms.get(0, self.ring.base.zero)

    def degrees(self) -> set:
        return {degree_of(k) for k in self.terms}

    def total_degree(self) -> int:
        return max((degree_of(k) for k in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {k: v for k, v in self.terms.items() if degree_of(k) == d})

    def coefficient(self, exps):
        return self.terms.get(self.ring.pack(exps), self.ring.base.zero)

    def map_coefficients(self, fn, ring=None) -> "Poly":
        ring = ring or self.ring
        t = {}
        for k, v in self.terms.items():
            c = fn(v)
            if c:
                t[k] = c
        return Poly(ring, t)

    def evaluate(self, values):
        """Substitute values for all variables (values live in any ring containing base)."""
        total = None
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(self.ring.unpack(k)):
                if e:
                    term = term * values[i] ** e
            total = term if total is None else total + term
        return self.ring.base.zero if total is None else total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            exps = self.ring.unpack(k)
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, exps) if e
            )
            parts.append(f"({self.terms[k]!r})" + ("*" + mono if mono else ""))
        return " + ".join(parts)
