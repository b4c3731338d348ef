import random
from fractions import Fraction

import pytest

from quiverinv.fields import GF, QQ
from quiverinv.invariants import (
    CycleInvariant, NotHomogeneousError, PhiStar, WordInvariant, char_coeffs, cycle_generators,
    enumerate_word_generators, eval_word_invariant, expand_invariant, expand_polynomial, oriented_cycles,
    phi_star_eval,
)
from quiverinv.linalg import ExactMatrix
from quiverinv.nullcone import BlockSemiInvariant
from quiverinv.poly import Poly
from quiverinv.quiver import MatrixTuple, Quiver, QuiverRep, generic_tuple, loop_quiver

from conftest import random_matrix


def M(rows, F=QQ):
    return ExactMatrix.from_rows(rows, F)


def test_char_coeffs_examples():
    assert char_coeffs(ExactMatrix.zeros(2, 2, QQ)) == [0, 0, 1]
    assert char_coeffs(ExactMatrix.identity(2, QQ)) == [1, -2, 1]
    assert char_coeffs(M([[1, 0], [0, 2]])) == [2, -3, 1]


def test_word_invariant_examples():
    X = MatrixTuple([M([[1, 2], [3, 4]])])
    assert eval_word_invariant(WordInvariant((1,), 1, 2), X) == -5
    assert eval_word_invariant(WordInvariant((1,), 0, 2), X) == -2
    I = ExactMatrix.identity(2, QQ)
    assert eval_word_invariant(WordInvariant((1, 2), 0, 2), MatrixTuple([I, I])) == 1
    with pytest.raises(IndexError):
        eval_word_invariant(WordInvariant((3,), 0, 2), X)
    with pytest.raises(ValueError):
        WordInvariant((1,), 3, 2)


def test_enumeration_examples():
    got = {(w.word, w.j, w.degree) for w in enumerate_word_generators(2, 1, 2)}
    assert got == {((1,), 1, 1), ((1,), 0, 2), ((1, 1), 1, 2)}
    assert {(w.word, w.j) for w in enumerate_word_generators(2, 2, 1)} == {((1,), 1), ((2,), 1)}
    assert enumerate_word_generators(2, 2, 0) == []


def test_enumeration_by_rule():
    # brute force over all words, dedupe by rotation
    from itertools import product
    n, m, D = 3, 2, 4
    expect = set()
    for k in range(1, D + 1):
        for word in product((1, 2), repeat=k):
            rep = min(word[i:] + word[:i] for i in range(k))
            for j in range(n):
                if k * (n - j) <= D:
                    expect.add((rep, j))
    got = [(w.word, w.j) for w in enumerate_word_generators(n, m, D)]
    assert len(got) == len(set(got))
    assert set(got) == expect


def test_cycle_generators():
    A2 = Quiver(["x", "y"], [("a", "x", "y")])
    assert cycle_generators(A2, {"x": 1, "y": 2}, 5) == []
    loop = cycle_generators(loop_quiver(1), {"v": 2}, 2)
    words = [(tuple(int(c[1:]) for c in g.cycle), g.j) for g in loop]
    assert words == [(w.word, w.j) for w in enumerate_word_generators(2, 1, 2)]
    two = Quiver(["x", "y"], [("a", "x", "y"), ("b", "y", "x")])
    gens = cycle_generators(two, {"x": 1, "y": 1}, 2)
    assert [(g.cycle, g.j) for g in gens] == [(("a", "b"), 0)]
    assert oriented_cycles(two, 4) == [("a", "b"), ("a", "b", "a", "b")]


def test_cycle_invariant_uses_composite():
    two = Quiver(["x", "y"], [("a", "x", "y"), ("b", "y", "x")])
    V = QuiverRep(two, {"x": 1, "y": 2}, {"a": M([[1], [2]]), "b": M([[3, 4]])})
    # b.a : x -> x is the 1x1 matrix [3 + 8]
    assert CycleInvariant(("a", "b"), 0, 1).evaluate(V) == -11


def test_phi_star_examples():
    X = MatrixTuple([M([[1, 0], [0, 0]])])
    one = ExactMatrix(1, 1, [QQ(1)], QQ)
    zero = ExactMatrix(1, 1, [QQ(0)], QQ)
    f = BlockSemiInvariant(1, (one, one), 2)
    assert phi_star_eval(f, X) == 2
    assert phi_star_eval(BlockSemiInvariant(1, (one, zero), 2), MatrixTuple([M([[1, 2], [3, 4]])])) == 1
    assert phi_star_eval(BlockSemiInvariant(1, (zero, one), 2), MatrixTuple([M([[1, 2], [3, 4]])])) == -2
    with pytest.raises(ValueError):
        phi_star_eval(BlockSemiInvariant(1, (one, one, one), 2), X)
    assert PhiStar(f, 1).evaluate(X) == 2


def test_expand_examples():
    assert expand_invariant(WordInvariant((1,), 1, 2), 2, 1, 1) == [-1, 0, 0, -1]
    det = expand_polynomial(WordInvariant((1,), 0, 2), 2, 1)
    X, R = generic_tuple(2, 1)
    x11, x12, x21, x22 = R.gens()
    assert det.terms == (x11 * x22 - x12 * x21).terms
    sq = expand_polynomial(WordInvariant((1, 1), 0, 2), 2, 1)
    assert sq.terms == (det * det).terms
    coeffs = expand_invariant(WordInvariant((1, 1), 0, 2), 2, 1, 4)
    basis = R.homogeneous_basis(4)
    assert dict((k, c) for k, c in zip(basis, coeffs) if c) == (det * det).terms


def test_expand_rejects_inhomogeneous():
    f = PhiStar(BlockSemiInvariant(1, (ExactMatrix.identity(1, QQ),) * 2, 2), 1)
    with pytest.raises(NotHomogeneousError):
        expand_invariant(f, 2, 1, 2)


def test_sigma_properties_over_prime_field():
    F = GF(10007)
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 4)
        A = random_matrix(rng, n, F, 0, 10006)
        B = random_matrix(rng, n, F, 0, 10006)
        if B.det():
            assert char_coeffs(B @ A @ B.inverse()) == char_coeffs(A)
        assert char_coeffs(A @ B) == char_coeffs(B @ A)


def test_trace_and_det_from_coefficients(rng):
    for n in range(1, 5):
        A = random_matrix(rng, n, QQ)
        c = char_coeffs(A)
        assert c[n] == 1
        assert -c[n - 1] == sum(A[i, i] for i in range(n))
        assert (-1) ** n * c[0] == A.det()
