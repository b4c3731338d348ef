import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverinv import _pykernels
from quiverinv.fields import GF, QQ, FieldMismatchError
from quiverinv.kernels import BACKEND
from quiverinv.linalg import ExactMatrix, SingularMatrixError, berkowitz, rank, rank_and_nullspace
from quiverinv.poly import PolyRing

from conftest import leibniz_det, random_matrix

try:
    from quiverinv import _ckernels
except ImportError:
    _ckernels = None


def test_rank_nullspace_examples():
    r, ns = rank_and_nullspace(ExactMatrix.identity(2, QQ))
    assert (r, ns) == (2, [])
    r, ns = rank_and_nullspace(ExactMatrix.zeros(2, 2, QQ))
    assert r == 0 and len(ns) == 2
    r, ns = rank_and_nullspace(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    assert r == 1
    assert ns == [[Fraction(-2), Fraction(1)]]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_nullspace_is_kernel(rows, cols, seed):
    rng = random.Random(seed)
    for F in (QQ, GF(7)):
        M = random_matrix(rng, rows, F, -2, 2, cols)
        r, ns = rank_and_nullspace(M)
        assert r + len(ns) == cols
        for v in ns:
            col = ExactMatrix(cols, 1, v, F)
            assert (M @ col).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_det_matches_leibniz(n, seed):
    rng = random.Random(seed)
    for F in (QQ, GF(10007), GF(5)):
        M = random_matrix(rng, n, F, -9, 9)
        assert M.det() == F(leibniz_det(M.to_rows()))


def test_berkowitz_matches_symbolic_leibniz(rng):
    R = PolyRing(QQ, 1, ["t"])
    t = R.gen(0)
    for n in range(1, 5):
        A = random_matrix(rng, n, QQ)
        rows = [[(t if i == j else R.zero) - A[i, j] for j in range(n)] for i in range(n)]
        P = leibniz_det(rows)
        coeffs = berkowitz(A)
        assert coeffs == [P.coefficient((j,)) for j in range(n + 1)]


def test_inverse_and_singular(rng):
    A = ExactMatrix.from_rows([[2, 1], [1, 1]])
    assert A @ A.inverse() == ExactMatrix.identity(2, QQ)
    with pytest.raises(SingularMatrixError):
        ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_mixed_field_matrices():
    A = ExactMatrix.identity(2, QQ)
    B = ExactMatrix.identity(2, GF(5))
    with pytest.raises(FieldMismatchError):
        A @ B


def test_kron_convention():
    A = ExactMatrix.from_rows([[1, 2], [3, 4]])
    B = ExactMatrix.from_rows([[0, 1], [1, 0]])
    K = A.kron(B)
    for u in range(2):
        for a in range(2):
            for v in range(2):
                for b in range(2):
                    assert K[u * 2 + a, v * 2 + b] == A[u, v] * B[a, b]


def test_rank_over_small_field_differs():
    M = ExactMatrix.from_rows([[1, 1], [1, 3]])
    assert rank(M) == 2
    assert rank(M.change_ring(GF(2))) == 1


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10**6))
def test_compiled_kernels_agree(rows, cols, seed):
    rng = random.Random(seed)
    for p in (2, 7, 4611686018427387847):
        M = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        assert _ckernels.rank_mod_p(M, cols, p) == _pykernels.rank_mod_p(M, cols, p)
        assert _ckernels.rref_mod_p(M, cols, p) == _pykernels.rref_mod_p(M, cols, p)
        S = [r[:rows] + [0] * max(0, rows - cols) for r in M]
        assert _ckernels.det_mod_p(S, p) == _pykernels.det_mod_p(S, p)


def test_backend_reported():
    assert BACKEND in ("cython", "python")


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, QI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import quiverinv.kernels as k; print(k.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
