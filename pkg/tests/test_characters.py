import random
from itertools import product

import pytest

from quiverinv.characters import (
    DominantWeight, NotAGoodCharacterError, TorusCharacter, conjugate, partitions, schur_character,
    schur_decompose, schur_dimension, weight_multiplicity,
)


def ssyt_monomials(lam, n):
    """Brute force: fill the diagram with entries 1..n, keep the semistandard fillings."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    out = {}
    for fill in product(range(n), repeat=len(cells)):
        T = dict(zip(cells, fill))
        ok = all(T[(i, j)] <= T[(i, j + 1)] for (i, j) in cells if (i, j + 1) in T)
        ok = ok and all(T[(i, j)] < T[(i + 1, j)] for (i, j) in cells if (i + 1, j) in T)
        if ok:
            e = [0] * n
            for v in fill:
                e[v] += 1
            out[tuple(e)] = out.get(tuple(e), 0) + 1
    return out


def char(groups, monomials):
    return TorusCharacter.from_monomials(groups, monomials)


def test_schur_examples():
    assert schur_character((1, 0), 2).monomials() == {(1, 0): 1, (0, 1): 1}
    assert schur_character((1, 1), 2).monomials() == {(1, 1): 1}
    assert schur_character((2, 0), 2).monomials() == {(2, 0): 1, (1, 1): 1, (0, 2): 1}


def test_schur_matches_tableaux():
    for n in (1, 2, 3):
        for t in range(0, 5):
            for lam in partitions(t, max_len=n):
                lam = tuple(lam) + (0,) * (n - len(lam))
                assert schur_character(lam, n).monomials() == ssyt_monomials(lam, n), (lam, n)


def test_schur_dimension_matches_tableaux():
    for n in (1, 2, 3, 4):
        for t in range(0, 5):
            for lam in partitions(t, max_len=n):
                assert schur_dimension(lam, n) == sum(ssyt_monomials(lam, n).values())
    assert schur_dimension((1, 1, 1), 2) == 0


def test_negative_weights_are_det_twists():
    ch = schur_character((1, -1), 2)
    assert ch.monomials() == {(1, -1): 1, (0, 0): 1, (-1, 1): 1}


def test_decompose_examples():
    sq = char((2,), {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert sorted(schur_decompose(sq)) == [((DominantWeight((1, 1)),), 1), ((DominantWeight((2, 0)),), 1)]
    assert schur_decompose(char((2,), {(3, 3): 1})) == [((DominantWeight((3, 3)),), 1)]
    adj = char((2,), {(1, -1): 1, (0, 0): 2, (-1, 1): 1})
    assert sorted(schur_decompose(adj)) == [((DominantWeight((0, 0)),), 1), ((DominantWeight((1, -1)),), 1)]


def test_decompose_negative_raises():
    f = char((2,), {(1, 1): 1}) - char((2,), {(2, 0): 1, (1, 1): 1, (0, 2): 1})
    with pytest.raises(NotAGoodCharacterError):
        schur_decompose(f)
    with pytest.raises(NotAGoodCharacterError):
        weight_multiplicity(f, [(2, 0)])


def test_weight_multiplicity_examples():
    adj = char((2,), {(1, -1): 1, (0, 0): 2, (-1, 1): 1})
    assert weight_multiplicity(adj, [(0, 0)]) == 1
    assert weight_multiplicity(char((2,), {(1, 0): 1, (0, 1): 1}), [(0, 0)]) == 0
    assert weight_multiplicity(TorusCharacter.constant((2,)), [(0, 0)]) == 1


def test_weight_multiplicity_agrees_with_decompose():
    rng = random.Random(7)
    groups = (2, 2)
    for _ in range(20):
        mons = {}
        for _ in range(3):
            lam = sorted([rng.randint(-2, 2) for _ in range(2)], reverse=True)
            mu = sorted([rng.randint(-2, 2) for _ in range(2)], reverse=True)
            c = rng.randint(1, 3)
            for ka, va in schur_character(lam, 2).monomials().items():
                for kb, vb in schur_character(mu, 2).monomials().items():
                    mons[ka + kb] = mons.get(ka + kb, 0) + c * va * vb
        f = TorusCharacter.from_monomials(groups, mons)
        for weights, mult in schur_decompose(f):
            assert weight_multiplicity(f, weights) == mult


def test_weyl_symmetry_is_checked():
    with pytest.raises(ValueError):
        TorusCharacter.from_monomials((2,), {(1, 0): 1})


def test_characters_multiply():
    a = schur_character((1, 0), 2)
    prod = a * a
    assert prod.monomials() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_conjugate_partition():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_dominant_weight_validation():
    with pytest.raises(ValueError):
        DominantWeight((0, 1))
    assert DominantWeight((2, -1)).shift(1) == (3, 0)
