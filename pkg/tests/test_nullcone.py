import random
from fractions import Fraction

import pytest

from quiverinv.fields import GF, LARGE_PRIMES, QQ
from quiverinv.linalg import ExactMatrix
from quiverinv.nullcone import (
    BlockSemiInvariant, coefficient_family, eval_block_det, generic_block_determinant, nullcone_family,
    nullcone_member, replay_witness, weight_check,
)
from quiverinv.quiver import MatrixTuple

from conftest import random_matrix


def M(rows, F=QQ):
    return ExactMatrix.from_rows(rows, F)


def scalar(c, F=QQ):
    return ExactMatrix(1, 1, [F(c)], F)


I2 = ExactMatrix.identity(2, QQ)
E11 = M([[1, 0], [0, 0]])
E22 = M([[0, 0], [0, 1]])
NIL = M([[0, 1], [0, 0]])


def test_block_det_examples():
    assert eval_block_det(BlockSemiInvariant(1, (scalar(1),)), MatrixTuple([I2])) == 1
    assert eval_block_det(BlockSemiInvariant(1, (scalar(1), scalar(1))), MatrixTuple([E11, E22])) == 1
    assert eval_block_det(BlockSemiInvariant(1, (scalar(1),)), MatrixTuple([NIL])) == 0
    with pytest.raises(ValueError):
        eval_block_det(BlockSemiInvariant(1, (scalar(1),)), MatrixTuple([I2, I2]))


def test_weight_check_examples():
    s = BlockSemiInvariant(1, (scalar(1),), 2)
    X = MatrixTuple([I2])
    assert weight_check(s, I2, I2, X)
    assert weight_check(s, M([[2, 0], [0, 1]]), I2, X)


def test_weight_check_random_pairs_over_prime_field():
    F = GF(10007)
    rng = random.Random(11)
    for _ in range(200):
        n, m, d = rng.randint(2, 3), rng.randint(1, 2), rng.randint(1, 2)
        T = tuple(random_matrix(rng, d, F, 0, 10006) for _ in range(m))
        s = BlockSemiInvariant(d, T, n)
        X = MatrixTuple([random_matrix(rng, n, F, 0, 10006) for _ in range(m)])
        A, B = random_matrix(rng, n, F, 0, 10006), random_matrix(rng, n, F, 0, 10006)
        if A.det() and B.det():
            assert weight_check(s, A, B, X)


def test_family_shapes_and_determinism():
    fam = nullcone_family(2, 2, 3, seed=5)
    assert all(s.d == 1 and s.degree == 2 for s in fam)
    fam3 = nullcone_family(3, 2, 2, seed=5)
    assert all(s.d == 2 and s.degree == 6 for s in fam3)
    again = nullcone_family(2, 2, 3, seed=5)
    assert [s.to_json() for s in fam] == [s.to_json() for s in again]
    assert [s.to_json() for s in nullcone_family(2, 2, 3, seed=6)] != [s.to_json() for s in fam]
    with pytest.raises(ValueError):
        nullcone_family(1, 2, 3, seed=0)


def test_membership_examples():
    v = nullcone_member(MatrixTuple([NIL]), exact=True)
    assert v.member
    v = nullcone_member(MatrixTuple([I2]), exact=True)
    assert not v.member and v.witness["value"] == "1" and v.witness["blocks"] == [[[1]]]
    v = nullcone_member(MatrixTuple([E11, E22]), exact=True)
    assert not v.member
    P, _ = generic_block_determinant(MatrixTuple([E11, E22]), 1)
    assert P.terms == {(1 << 0) + (1 << 8): QQ(1)}


def test_randomized_mode_and_replay():
    v = nullcone_member(MatrixTuple([NIL, NIL]), trials=40, seed=1)
    assert v.member and v.prime == LARGE_PRIMES[0]
    assert v.error_bound == Fraction(2, LARGE_PRIMES[0]) ** 40
    assert v.error_bound < Fraction(1, 2**40)
    X = MatrixTuple([NIL, M([[Fraction(1, 3), 0], [5, 1]])])
    v = nullcone_member(X, trials=40, seed=1)
    assert not v.member
    assert replay_witness(v, X) == v.witness["value"] != 0
    assert nullcone_member(X, trials=40, seed=1).to_json() == v.to_json()


def test_exact_and_randomized_agree_on_small_tuples():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.choice([2, 3])
        m = rng.choice([1, 2])
        mats = []
        for _ in range(m):
            A = random_matrix(rng, n, QQ, -2, 2)
            if rng.random() < 0.5:  # strictly upper triangular often
                A = ExactMatrix.from_rows([[A[i, j] if j > i else 0 for j in range(n)] for i in range(n)])
            mats.append(A)
        X = MatrixTuple(mats)
        e = nullcone_member(X, exact=True)
        r = nullcone_member(X, trials=10, seed=0)
        assert e.member == r.member
        if not e.member and "blocks" in e.witness:
            assert replay_witness(e, X) != 0


def test_mode_restrictions():
    X4 = MatrixTuple([ExactMatrix.identity(4, QQ)])
    with pytest.raises(ValueError):
        nullcone_member(X4, exact=True)
    with pytest.raises(ValueError):
        nullcone_member(MatrixTuple([ExactMatrix.identity(2, GF(5))]))
    with pytest.raises(ValueError):
        nullcone_member(MatrixTuple([I2]), trials=0)


def test_coefficient_family():
    fam = coefficient_family(2, 2)
    assert len(fam) == 3
    X = MatrixTuple([E11, E22])
    assert [eval_block_det(s, X) for s in fam] == [0, 0, 1]
