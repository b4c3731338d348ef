import pytest

from quiverinv.characters import TorusCharacter
from quiverinv.fields import QQ
from quiverinv.harness import lie_invariant_dim
from quiverinv.hilbert import (
    cauchy_dimension_check, cauchy_dimensions, descriptor_from_json, hilbert_truncation, invariant_dim,
    matrix_invariants, matrix_semi_invariants, quiver_invariants, quiver_semi_invariants, rep_character,
)
from quiverinv.linalg import ExactMatrix
from quiverinv.quiver import (
    CyclicQuiverError, GroupElement, Quiver, act, chi_sigma, generic_rep, kronecker_quiver, loop_quiver,
)

A2 = Quiver(["x", "y"], [("a", "x", "y")])
TWO_CYCLE = Quiver(["x", "y"], [("a", "x", "y"), ("b", "y", "x")])


def test_rep_character_examples():
    assert rep_character(A2, {"x": 1, "y": 2}, 0).monomials() == {(0, 0, 0): 1}
    assert rep_character(loop_quiver(1), {"v": 1}, 3).monomials() == {(0,): 1}
    assert rep_character(kronecker_quiver(1), {"x": 1, "y": 1}, 2).monomials() == {(2, -2): 1}


def test_rep_character_dimension_is_binomial():
    from math import comb
    ch = rep_character(kronecker_quiver(2), {"x": 2, "y": 2}, 3)
    assert ch.dimension() == comb(8 + 2, 3)


def test_known_series():
    assert hilbert_truncation(matrix_invariants(2, 1), 5).coefficients == [1, 1, 2, 2, 3, 3]
    assert hilbert_truncation(matrix_semi_invariants(2, 1), 4).coefficients == [1, 0, 1, 0, 1]
    assert hilbert_truncation(matrix_invariants(2, 2), 4).coefficients == [1, 2, 6, 10, 20]
    # classical: S(3,1) is polynomial on generators of degrees 1, 2, 3
    assert hilbert_truncation(matrix_invariants(3, 1), 6).coefficients == [1, 1, 2, 3, 4, 5, 7]
    # R(3,2) is polynomial on the four cubic coefficients of det(s X + t Y)
    assert hilbert_truncation(matrix_semi_invariants(3, 2), 6).coefficients == [1, 0, 0, 4, 0, 0, 10]
    for R in (matrix_invariants(2, 3), matrix_semi_invariants(2, 2)):
        assert hilbert_truncation(R, 0).coefficients == [1]


def test_loop_quiver_matches_matrix_invariants():
    R = quiver_invariants(loop_quiver(2), {"v": 2})
    assert hilbert_truncation(R, 4).coefficients == hilbert_truncation(matrix_invariants(2, 2), 4).coefficients


def test_quiver_invariant_series():
    # the only cycle is ab, of degree 2
    assert hilbert_truncation(quiver_invariants(TWO_CYCLE, {"x": 1, "y": 1}), 4).coefficients == [1, 0, 1, 0, 1]
    assert hilbert_truncation(quiver_invariants(A2, {"x": 1, "y": 2}), 3).coefficients == [1, 0, 0, 0]


def test_semi_invariant_series():
    R = quiver_semi_invariants(kronecker_quiver(1), {"x": 1, "y": 1}, {"x": 1, "y": -1})
    assert hilbert_truncation(R, 4).coefficients == [1, 1, 1, 1, 1]
    wrong = quiver_semi_invariants(kronecker_quiver(1), {"x": 1, "y": 1}, {"x": -1, "y": 1})
    assert hilbert_truncation(wrong, 3).coefficients == [1, 0, 0, 0]
    R2 = quiver_semi_invariants(kronecker_quiver(2), {"x": 2, "y": 2}, {"x": 1, "y": -1})
    # weight k sigma lives in degree 2k and matches R(2,2) there
    assert hilbert_truncation(R2, 3).coefficients == [1, 3, 6, 10]
    with pytest.raises(CyclicQuiverError):
        quiver_semi_invariants(TWO_CYCLE, {"x": 1, "y": 1}, {"x": 1, "y": -1})


def test_semi_invariant_weight_convention():
    # det on the Kronecker quiver: f(g^-1 . V) = chi_sigma(g) f(V) with sigma = (+1 at the tail)
    Q = kronecker_quiver(1)
    V, ring = generic_rep(Q, {"x": 2, "y": 2})
    g = GroupElement({"x": ExactMatrix.from_rows([[2, 1], [0, 1]]), "y": ExactMatrix.from_rows([[3, 0], [1, 1]])})
    # (g^-1 . V)(a) = g(y)^-1 V(a) g(x)
    moved = g["y"].inverse().change_ring(ring) @ V["X1"] @ g["x"].change_ring(ring)
    lhs = moved.det()
    rhs = V["X1"].det() * chi_sigma(g, {"x": 1, "y": -1})
    assert lhs.terms == rhs.terms


def test_quiver_kinds_agree_with_lie_oracle():
    cases = [
        quiver_invariants(TWO_CYCLE, {"x": 1, "y": 2}),
        quiver_semi_invariants(A2, {"x": 2, "y": 2}, {"x": 1, "y": -1}),
        quiver_semi_invariants(kronecker_quiver(3), {"x": 1, "y": 2}, {"x": 2, "y": -1}),
    ]
    for R in cases:
        for d in range(4):
            assert invariant_dim(R, d) == lie_invariant_dim(R, d), (R.label(), d)


def test_parallel_matches_serial():
    R = matrix_invariants(2, 2)
    assert hilbert_truncation(R, 5, workers=2).coefficients == hilbert_truncation(R, 5, workers=1).coefficients


def test_reports():
    H = hilbert_truncation(matrix_invariants(2, 1), 3)
    assert H.to_csv() == "degree,dimension\n0,1\n1,1\n2,2\n3,2\n"
    assert descriptor_from_json(H.to_json()["ring"]) == matrix_invariants(2, 1)
    R = quiver_semi_invariants(A2, {"x": 1, "y": 1}, {"x": 1, "y": -1})
    assert descriptor_from_json(R.to_json()) == R
    assert "windows" in hilbert_truncation(R, 2).metadata


def test_bad_arguments():
    with pytest.raises(ValueError):
        invariant_dim(matrix_invariants(2, 1), -1)
    with pytest.raises(ValueError):
        matrix_invariants(0, 1)


def test_cauchy_examples():
    assert cauchy_dimensions(2, 2, 2) == (10, 10)
    assert cauchy_dimensions(3, 2, 3) == (56, 56)
    for p in range(1, 5):
        for q in range(1, 5):
            assert cauchy_dimensions(1, p, q) == (p * q, p * q)
            assert cauchy_dimension_check(4, p, q)
    with pytest.raises(ValueError):
        cauchy_dimension_check(-1, 2, 2)
