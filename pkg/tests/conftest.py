import random
from fractions import Fraction

import pytest

from unimat.matrix import IntMat

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, ok, detail: str) -> None:
    """One summary line per acceptance criterion; ``ok=None`` marks it out of scope."""
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    line = f"[{status}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def cofactor_det(rows) -> int:
    """Laplace expansion along the first row; test oracle only."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def random_matrix(rng: random.Random, m: int, n: int, lo: int = -9, hi: int = 9) -> IntMat:
    return IntMat([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def random_nonsingular(rng: random.Random, n: int, lo: int = -9, hi: int = 9) -> IntMat:
    while True:
        A = random_matrix(rng, n, n, lo, hi)
        if fraction_det(A):
            return A


def fraction_det(A: IntMat) -> int:
    """Gaussian elimination over the rationals; test oracle only."""
    M = [[Fraction(x) for x in r] for r in A.rows]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[p], M[c] = M[c], M[p]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return int(d)


def random_unimodular(rng: random.Random, n: int, steps: int = 12) -> IntMat:
    """Product of elementary integer row operations (swaps, sign flips, shears)."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if op == 0:
            U[i], U[j] = U[j], U[i]
        elif op == 1:
            U[i] = [-x for x in U[i]]
        elif i != j:
            c = rng.choice([-2, -1, 1, 2])
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return IntMat(U)


def assert_hnf_shape(H: IntMat, pivots, rank: int) -> None:
    """Structural check of the row Hermite normal form conditions."""
    assert len(pivots) == rank
    assert list(pivots) == sorted(set(pivots))
    for j, c in enumerate(pivots):
        assert H[j, c] > 0
        assert all(H[j, t] == 0 for t in range(c))
        for l in range(j):
            assert 0 <= H[l, c] < H[j, c]
    for i in range(rank, H.nrows):
        assert not any(H.rows[i])


@pytest.fixture
def rng():
    return random.Random(20240611)
