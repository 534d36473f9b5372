"""Primitivity tests for k x n integer matrices, plus brute-force oracles.

A k x n matrix A is primitive when its rows extend to a basis of Z^n.
Equivalently the columns of A generate all of Z^k, i.e. the Hermite form
of A^T is the identity stacked on zeros.

:func:`is_primitive` answers this without computing the full Hermite form:
a fraction-free elimination yields several k x k minors at once; the column
lattice contains gcd(minors) * Z^k, so a gcd of 1 settles the question and
otherwise an echelon pass modulo that gcd decides it with small numbers.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Optional, Union

from .errors import BadShape, EmptyInput, TooLarge
from .linalg import _bareiss_det, hnf, is_prime, rank_mod_p, xgcd
from .matrix import EmptyMat, IntMat


class _RankDeficientOverQ:
    """Marker returned by :func:`unprimitive_witness` for rank-deficient input."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "RankDeficientOverQ"

    def __bool__(self) -> bool:
        return True


RankDeficientOverQ = _RankDeficientOverQ()

ORACLE_MAX_N = 10


def _check_shape(A) -> None:
    if isinstance(A, EmptyMat):
        raise EmptyInput("primitivity of an empty matrix")
    if A.nrows > A.ncols:
        raise BadShape(f"k={A.nrows} exceeds n={A.ncols}")


def is_primitive(A: IntMat) -> bool:
    """True iff the rows of ``A`` (k <= n) extend to a unimodular matrix."""
    _check_shape(A)
    return _primitive_rows(A.rows, A.ncols)


def _primitive_rows(rows, n: int) -> bool:
    m = len(rows)
    M = [list(r) for r in rows]
    prev = 1
    for t in range(m - 1):
        piv = None
        for j in range(t, n):
            for i in range(t, m):
                if M[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            return False
        i, j = piv
        if i != t:
            M[i], M[t] = M[t], M[i]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
        a = M[t][t]
        rt = M[t]
        for i in range(t + 1, m):
            ri = M[i]
            b = ri[t]
            if b:
                for jj in range(t + 1, n):
                    ri[jj] = (a * ri[jj] - b * rt[jj]) // prev
            else:
                for jj in range(t + 1, n):
                    ri[jj] = a * ri[jj] // prev
        prev = a
    # M[m-1][j] for j >= m-1 are k x k minors of A (up to sign)
    g = 0
    for x in M[m - 1][m - 1 :]:
        g = gcd(g, x)
        if g == 1:
            return True
    if g == 0:
        return False
    return _columns_span_mod(rows, m, n, g)


def _columns_span_mod(rows, m: int, n: int, D: int) -> bool:
    """Do the columns of ``rows`` generate Z^m, given D*Z^m lies in their span?"""
    vecs = [[rows[i][j] % D for i in range(m)] for j in range(n)]
    for c in range(m):
        vecs = [v for v in vecs if any(v[c:])]
        p = next((v for v in vecs if gcd(v[c], D) == 1), None)
        if p is None:
            nz = [v for v in vecs if v[c]]
            if not nz:
                return False
            p = nz[0]
            for v in nz[1:]:
                g2, x, y = xgcd(p[c], v[c])
                a, b = p[c] // g2, v[c] // g2
                p[:], v[:] = (
                    [(x * pi + y * vi) % D for pi, vi in zip(p, v)],
                    [(a * vi - b * pi) % D for pi, vi in zip(p, v)],
                )
            if gcd(p[c], D) != 1:
                return False
        vecs = [v for v in vecs if v is not p]
        inv = pow(p[c], -1, D)
        p = [x * inv % D for x in p]
        for v in vecs:
            f = v[c]
            if f:
                for j in range(c, m):
                    v[j] = (v[j] - f * p[j]) % D
    return True


def is_primitive_hnf(A: IntMat) -> bool:
    """Direct check that HNF(A^T) is the identity stacked on zeros."""
    _check_shape(A)
    k, n = A.nrows, A.ncols
    target = IntMat.identity(k)
    if n > k:
        target = target.vstack(IntMat.zeros(n - k, k))
    return hnf(A.T).H == target


def _minor_gcd(A: IntMat, stop_at_one: bool = True) -> int:
    k, n = A.nrows, A.ncols
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, _bareiss_det([[row[j] for j in cols] for row in A.rows]))
        if stop_at_one and g == 1:
            break
    return g


def _check_oracle_size(A) -> None:
    _check_shape(A)
    if A.ncols > ORACLE_MAX_N:
        raise TooLarge(f"n={A.ncols} exceeds oracle limit {ORACLE_MAX_N}")


def is_primitive_minor_oracle(A: IntMat) -> bool:
    """Brute force: some k x k minor is nonzero and all minors have gcd 1."""
    _check_oracle_size(A)
    return _minor_gcd(A) == 1


def _prime_factor(g: int) -> int:
    d = 2
    while d * d <= g and d < 1 << 16:
        if g % d == 0:
            return d
        d += 1
    if is_prime(g):
        return g
    from sympy import primefactors

    return primefactors(g)[0]


def unprimitive_witness(A: IntMat) -> Optional[Union[int, _RankDeficientOverQ]]:
    """A prime modulo which ``A`` loses rank, if ``A`` is not primitive.

    Returns None for primitive input and :data:`RankDeficientOverQ` when the
    rows are already dependent over the rationals.
    """
    _check_oracle_size(A)
    g = _minor_gcd(A)
    if g == 0:
        return RankDeficientOverQ
    if g == 1:
        return None
    p = _prime_factor(g)
    assert rank_mod_p(A, p) < A.nrows
    return p
