from fractions import Fraction

import pytest

from quiverinv.fields import (
    GF, LARGE_PRIMES, QQ, FieldMismatchError, Residue, field_from_json, is_prime, parse_field,
)


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_is_prime_matches_trial_division():
    for n in range(-3, 3000):
        assert is_prime(n) == trial_division(n), n


def test_large_primes_are_prime_and_big():
    for p in LARGE_PRIMES:
        assert is_prime(p)
        assert 2**60 < p < 2**62
    assert len(set(LARGE_PRIMES)) == len(LARGE_PRIMES)


def test_residue_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a - b == F(5)
    assert a * b == F(1)
    assert a / b == F(3 * 3)
    assert a.inverse() * a == F.one
    assert a ** 6 == F.one
    assert -a == F(4)
    assert F(Fraction(1, 2)) == F(4)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        GF(5)(0).inverse()
    with pytest.raises(ZeroDivisionError):
        GF(5)(Fraction(1, 5))


def test_mixed_fields_raise():
    with pytest.raises(FieldMismatchError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatchError):
        QQ(GF(5)(1))


def test_prime_field_rejects_composites_and_huge():
    for bad in (4, 1, 0, 2**62 + 135):
        with pytest.raises(ValueError):
            GF(bad)


def test_parse_and_format_round_trip():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert QQ.format(Fraction(4)) == "4"
    F = GF(11)
    assert F.format(F.parse("1/2")) == "6"
    with pytest.raises(ValueError):
        QQ.parse("0.5")


def test_field_descriptors():
    assert parse_field("Q") == QQ
    assert parse_field("Fp:13") == GF(13)
    assert field_from_json({"kind": "Fp", "p": 13}) == GF(13)
    assert field_from_json(QQ.to_json()) == QQ
    with pytest.raises(ValueError):
        parse_field("Fp:15")
    with pytest.raises(ValueError):
        parse_field("R")
