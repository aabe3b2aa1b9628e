from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from circforest.families import BUILTIN_FAMILIES, build_family


def cofactor_det(mat):
    """Leibniz expansion; only for tiny matrices."""
    n = len(mat)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= mat[i][p]
        total += term
    return total


def cheb_value(n, x):
    """T_n(x) by the three-term recurrence on exact rationals."""
    x = Fraction(x)
    a, b = Fraction(1), x
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * x * b - a
    return b


def eigen_forest_count(adjacency, fibers, n):
    """prod of eigenvalues of I + L(H_n), assembled directly in numpy."""
    m = len(adjacency)
    size = n * m
    lap = np.zeros((size, size))
    for k in range(n):
        for i in range(m):
            for j in range(m):
                lap[i * n + k, j * n + k] -= adjacency[i][j]
            for s in fibers[i]:
                lap[i * n + k, i * n + (k + s) % n] -= 1
                lap[i * n + k, i * n + (k - s) % n] -= 1
    lap += np.diag(-lap.sum(axis=1))
    return float(np.prod(np.linalg.eigvalsh(np.eye(size) + lap)))


@pytest.fixture(params=BUILTIN_FAMILIES)
def family(request):
    return request.param, build_family(request.param)


acceptance_key = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one verdict per acceptance criterion for the terminal summary."""
    results = request.config.stash.setdefault(acceptance_key, {})

    def record(number, ok, detail=""):
        results[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(acceptance_key, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
