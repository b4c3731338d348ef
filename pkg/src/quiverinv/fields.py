"""Exact scalar fields: the rationals and prime fields of word-sized modulus.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
are :class:`Residue` objects that remember their modulus, so that mixing two
fields raises :class:`FieldMismatchError` instead of silently coercing.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldMismatchError(TypeError):
    """Raised when values from two different fields meet in one operation."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Residue:
    """An element of GF(p), stored as an int in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"GF({self.p}) vs QQ")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return Residue(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by 0 in GF(%d)" % self.p)
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return Residue(pow(self.inverse().v, -e, self.p), self.p)
        return Residue(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class Field:
    """Base class for the two supported ground fields."""

    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Residue):
            raise FieldMismatchError(f"GF({x.p}) vs QQ")
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        text = str(text).strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {text!r}")
        return Fraction(text)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def to_json(self):
        return {"kind": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p >= 2**62 or not is_prime(p):
            raise ValueError(f"modulus {p} is not a prime below 2^62")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) vs GF({self.p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Residue(int(x), self.p)

    def parse(self, text: str) -> Residue:
        text = str(text).strip()
        if "/" in text:
            return self(Fraction(text))
        return Residue(int(text), self.p)

    def format(self, x) -> str:
        return str(self(x).v)

    def contains(self, x) -> bool:
        return isinstance(x, Residue) and x.p == self.p

    def to_json(self):
        return {"kind": "Fp", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return GF(int(obj["p"]))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Parse ``Q`` or ``Fp:<p>``."""
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text[3:]))
    raise ValueError(f"unknown field {text!r}")


def field_of(x) -> Field:
    if isinstance(x, Residue):
        return GF(x.p)
    return QQ


# 62-bit primes used for randomized certification, tried in this order
LARGE_PRIMES = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
)
