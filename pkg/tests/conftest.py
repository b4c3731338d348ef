import random
from itertools import permutations

import pytest

from quiverinv.linalg import ExactMatrix


def leibniz_det(rows):
    """Determinant as the signed sum over permutations; works for any ring entries."""
    n = len(rows)
    if n == 0:
        return 1
    total = None
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = rows[0][p[0]]
        for i in range(1, n):
            term = term * rows[i][p[i]]
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def random_matrix(rng, n, field, lo=-5, hi=5, cols=None):
    cols = n if cols is None else cols
    return ExactMatrix.from_rows([[field(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(n)], field)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
