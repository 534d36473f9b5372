"""Exact integer and rational kernels: HNF, determinant, solving, gcd vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .errors import (
    ColumnMismatch,
    EmptyInput,
    NotCoprime,
    NotPrime,
    NotSquare,
    RankDeficient,
    SingularMatrix,
)
from .matrix import EmptyMat, IntMat


@dataclass(frozen=True)
class HnfResult:
    """Row Hermite normal form ``H = U A``.

    ``pivot_cols`` are 0-based column indices of the pivots, strictly
    increasing. ``U`` is only filled in when the transform was requested.
    """

    H: IntMat
    pivot_cols: tuple[int, ...]
    rank: int
    U: Optional[IntMat] = None

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.H[j, c] for j, c in enumerate(self.pivot_cols))


def _require_nonempty(A) -> None:
    if isinstance(A, EmptyMat):
        raise EmptyInput("operation needs a matrix with at least one row")


def _sub_row(M: list[list[int]], i: int, r: int, q: int, start: int = 0) -> None:
    """M[i] -= q * M[r], from column ``start`` on."""
    ri, rr = M[i], M[r]
    for j in range(start, len(ri)):
        if rr[j]:
            ri[j] -= q * rr[j]


def hnf(A: IntMat, transform: bool = False) -> HnfResult:
    """Row Hermite normal form by gcd pivoting and off-diagonal reduction.

    Each column is cleared below the pivot with repeated Euclidean steps
    (the smallest nonzero entry becomes the pivot), the pivot is made
    positive, and entries above it are reduced into ``[0, pivot)``.
    With ``transform=True`` the unimodular ``U`` with ``H = U A`` is
    tracked as well.
    """
    _require_nonempty(A)
    H = A.tolist()
    m, n = A.nrows, A.ncols
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[p], H[r] = H[r], H[p]
                if U is not None:
                    U[p], U[r] = U[r], U[p]
            piv = H[r][c]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // piv
                    _sub_row(H, i, r, q, c)
                    if U is not None:
                        _sub_row(U, i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                _sub_row(H, i, r, q, c)
                if U is not None:
                    _sub_row(U, i, r, q)
        pivots.append(c)
        r += 1
    return HnfResult(
        H=IntMat(H),
        pivot_cols=tuple(pivots),
        rank=r,
        U=IntMat(U) if U is not None else None,
    )


def _bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free elimination; destroys ``M``."""
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * M[n - 1][n - 1]


def det(A: IntMat) -> int:
    """Exact determinant (Bareiss)."""
    _require_nonempty(A)
    if not A.is_square:
        raise NotSquare(f"determinant of a {A.nrows}x{A.ncols} matrix")
    return _bareiss_det(A.tolist())


def rank(A: IntMat) -> int:
    """Rank over the rationals."""
    _require_nonempty(A)
    M = A.tolist()
    m, n = A.nrows, A.ncols
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[p], M[r] = M[r], M[p]
        arc = M[r][c]
        for i in range(r + 1, m):
            aic = M[i][c]
            M[i] = [(arc * M[i][j] - aic * M[r][j]) // prev for j in range(n)]
        prev = arc
        r += 1
    return r


_SMALL_PRIME_LIMIT = 1 << 20
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(p: int) -> bool:
    """Trial division below 2**20, Miller-Rabin with fixed bases above.

    The 13 bases are a proof of primality below 3.3e24; beyond that the
    answer is a strong-probable-prime verdict.
    """
    if p < 2:
        return False
    if p < _SMALL_PRIME_LIMIT:
        if p % 2 == 0:
            return p == 2
        for d in range(3, isqrt(p) + 1, 2):
            if p % d == 0:
                return False
        return True
    for b in _MR_BASES:
        if p % b == 0:
            return False
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def rank_mod_p(A: IntMat, p: int) -> int:
    """Rank of ``A`` over the field with ``p`` elements."""
    _require_nonempty(A)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    M = [[x % p for x in row] for row in A.rows]
    m, n = A.nrows, A.ncols
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[piv], M[r] = M[r], M[piv]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(r + 1, m):
            f = M[i][c]
            if f:
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
    return r


def solve_nonsingular(A: IntMat, b: Sequence[int]) -> tuple[Fraction, ...]:
    """Exact rational ``x`` with ``A x = b``."""
    _require_nonempty(A)
    if not A.is_square:
        raise NotSquare(f"cannot solve with a {A.nrows}x{A.ncols} matrix")
    n = A.nrows
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A.rows, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        M[p], M[c] = M[c], M[p]
        inv = 1 / M[c][c]
        rc = M[c]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c] * inv
                ri = M[i]
                for j in range(c, n + 1):
                    if rc[j]:
                        ri[j] -= f * rc[j]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def left_kernel_primitive(C: IntMat) -> tuple[int, ...]:
    """Primitive ``u`` with ``u C = 0`` for an ``n x (n-1)`` matrix of rank n-1.

    The sign is fixed so the first nonzero entry is positive.
    """
    _require_nonempty(C)
    n = C.nrows
    if C.ncols != n - 1:
        raise ColumnMismatch(f"expected {n}x{n - 1}, got {C.nrows}x{C.ncols}")
    # Gauss-Jordan on C^T; the kernel is one-dimensional.
    M = [[Fraction(x) for x in col] for col in zip(*C.rows)]
    pivots = []
    r = 0
    for c in range(n):
        if r == n - 1:
            break
        p = next((i for i in range(r, n - 1) if M[i][c]), None)
        if p is None:
            continue
        M[p], M[r] = M[r], M[p]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n - 1):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if r < n - 1:
        raise RankDeficient(f"column rank {r} < {n - 1}")
    free = next(c for c in range(n) if c not in pivots)
    u = [Fraction(0)] * n
    u[free] = Fraction(1)
    for i, c in enumerate(pivots):
        u[c] = -M[i][free]
    den = 1
    for x in u:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in u]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def extended_gcd_vector(u: Sequence[int]) -> tuple[int, ...]:
    """Integer ``b`` with ``sum(u_i * b_i) == 1``.

    Folds two-term extended Euclid from left to right. At each fold the
    Bezout pair is shifted along its solution line so the multiplier of the
    running coefficients has the smallest absolute value.
    """
    if not u:
        raise EmptyInput("empty vector")
    g = u[0]
    b = [1]
    for ui in u[1:]:
        g2, x, y = xgcd(g, ui)
        if g2:
            # x + t*(ui/g2), y - t*(g/g2) is also a solution
            sx, sy = ui // g2, g // g2
            if sx:
                t = _nearest(Fraction(-x, sx))
                x, y = x + t * sx, y - t * sy
        b = [x * bi for bi in b]
        b.append(y)
        g = g2
    if g == -1:
        b = [-bi for bi in b]
        g = 1
    if g != 1:
        raise NotCoprime(f"gcd of entries is {abs(g)}, not 1")
    return tuple(b)


def _nearest(x: Fraction) -> int:
    """Round half away from zero."""
    if x >= 0:
        return int(x + Fraction(1, 2))
    return -int(-x + Fraction(1, 2))


round_half_away = _nearest


def lattices_equal(A: IntMat, B: IntMat) -> bool:
    """True iff the rows of ``A`` and ``B`` span the same integer lattice."""
    if A.ncols != B.ncols:
        raise ColumnMismatch(f"{A.ncols} vs {B.ncols} columns")
    ha, hb = hnf(A), hnf(B)
    return ha.H.rows[: ha.rank] == hb.H.rows[: hb.rank]
