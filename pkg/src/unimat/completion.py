"""Unimodular completion by determinant reduction.

:func:`determinant_reduce` replaces the last column of a nonsingular
square matrix so that the last diagonal entry of its row Hermite form
becomes 1. Iterating it under a cyclic column shift rectifies several
trailing columns at once, which turns a random square completion of a
primitive matrix into a unimodular one.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from typing import Union

from .errors import BadShape, InvalidParams, NotPrimitive, RestartLimitExceeded, SingularMatrix
from .linalg import det, extended_gcd_vector, left_kernel_primitive, round_half_away, solve_nonsingular
from .matrix import AnyMat, EmptyMat, IntMat, max_norm
from .primitivity import is_primitive

log = logging.getLogger(__name__)

DEFAULT_SCHEME = "mt19937"


@dataclass(frozen=True)
class RngSpec:
    """Seed plus generator scheme. Equal specs give equal sample streams."""

    seed: int
    scheme: str = DEFAULT_SCHEME

    def generator(self) -> random.Random:
        if self.scheme != DEFAULT_SCHEME:
            raise InvalidParams(f"unsupported RNG scheme {self.scheme!r}")
        return random.Random(self.seed)


RngLike = Union[RngSpec, random.Random, int]


def as_generator(rng: RngLike) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    if isinstance(rng, RngSpec):
        return rng.generator()
    return RngSpec(int(rng)).generator()


@dataclass(frozen=True)
class CompletionResult:
    U: IntMat
    restarts: int
    lambda_used: int


def _rotate_columns(rows: list[list[int]], shift: int) -> list[list[int]]:
    """Right-multiply by P**shift: column j moves to column j + shift (mod n)."""
    n = len(rows[0])
    shift %= n
    if not shift:
        return [list(r) for r in rows]
    return [r[n - shift :] + r[: n - shift] for r in rows]


def determinant_reduce(A: IntMat, *, check: bool = True) -> IntMat:
    """Replace the last column of ``A`` so HNF(result) ends with a 1 on the diagonal.

    The new column is ``b - C q`` where ``C`` holds the first n-1 columns,
    ``u`` is the primitive left kernel vector of ``C``, ``u . b = 1``, and
    ``q`` rounds ``C_S^{-1} b_S`` for the n-1 rows ``S`` that leave out the
    row where ``|u|`` is largest (the last row when it attains the max).
    The resulting column satisfies ``u . c = 1`` and
    ``|c|_inf <= 1 + (n-1)**2 / 2 * max_norm(A)``.

    Raises SingularMatrix if ``A`` is singular.
    """
    if not isinstance(A, IntMat) or not A.is_square:
        raise BadShape("determinant reduction needs a square matrix")
    n = A.nrows
    if check and det(A) == 0:
        raise SingularMatrix("determinant reduction needs a nonsingular matrix")
    if n == 1:
        return IntMat([[1]])
    C = A.submatrix(range(n), range(n - 1))
    u = left_kernel_primitive(C)
    b = extended_gcd_vector(u)
    top = max(abs(x) for x in u)
    drop = max(i for i in range(n) if abs(u[i]) == top)
    keep = [i for i in range(n) if i != drop]
    x = solve_nonsingular(C.submatrix(keep, range(n - 1)), [b[i] for i in keep])
    q = [round_half_away(xi) for xi in x]
    col = [bi - sum(cij * qj for cij, qj in zip(ci, q)) for bi, ci in zip(b, C.rows)]
    if __debug__:
        assert sum(ui * ci for ui, ci in zip(u, col)) == 1
    return A.with_column(n - 1, col)


def iterated_determinant_reduce(A: IntMat, d: int) -> IntMat:
    """Rectify the last ``d`` columns so the last ``d`` HNF pivots are 1.

    Runs ``d`` rounds of determinant reduction, each followed by a cyclic
    shift that brings the next column into last position, then undoes the
    accumulated shift. Only the last ``d`` columns of ``A`` change.
    """
    if not isinstance(A, IntMat) or not A.is_square:
        raise BadShape("iterated determinant reduction needs a square matrix")
    n = A.nrows
    if not 1 <= d <= n:
        raise InvalidParams(f"need 1 <= d <= n = {n}, got {d}")
    if det(A) == 0:
        raise SingularMatrix("iterated determinant reduction needs a nonsingular matrix")
    B = A
    for _ in range(d):
        B = determinant_reduce(B, check=False)
        B = IntMat(_rotate_columns(B.tolist(), 1))
    return IntMat(_rotate_columns(B.tolist(), -d))


def _sample_rows(rng: random.Random, m: int, n: int, lam: int) -> list[list[int]]:
    r = rng.randrange
    return [[r(lam) for _ in range(n)] for _ in range(m)]


def random_extension(A: AnyMat, m: int, lam: int, rng: RngLike) -> IntMat:
    """Append ``m - k`` rows with entries uniform on ``{0, ..., lam - 1}``."""
    k, n = A.nrows, A.ncols
    if not k <= m <= n:
        raise BadShape(f"need k <= m <= n, got k={k}, m={m}, n={n}")
    if lam < 2:
        raise InvalidParams(f"need lambda >= 2, got {lam}")
    gen = as_generator(rng)
    given = list(A.rows) if isinstance(A, IntMat) else []
    return IntMat(given + _sample_rows(gen, m - k, n, lam))


def restart_cap(n: int) -> int:
    return 64 * math.ceil(math.log2(n + 1))


def _ceil_3_root(n: int) -> int:
    """ceil(3 * (n-3)**(2/5)) computed exactly: smallest t with t**5 >= 243 (n-3)**2."""
    if n <= 3:
        return 0
    target = 243 * (n - 3) ** 2
    t = int(3 * (n - 3) ** 0.4)
    while t**5 < target:
        t += 1
    while t > 0 and (t - 1) ** 5 >= target:
        t -= 1
    return t


def completion_lambda(A: AnyMat) -> int:
    """Sampling bound: max(||A||, ceil(3 (n-3)^(2/5)), 2)."""
    norm = max_norm(A) if isinstance(A, IntMat) else 0
    return max(norm, _ceil_3_root(A.ncols), 2)


def complete_one_row(A: IntMat, rng: RngLike) -> IntMat:
    """Complete an (n-1) x n primitive matrix with one extra row."""
    return _complete_one_row(A, as_generator(rng))[0]


def _complete_one_row(A: IntMat, gen: random.Random) -> tuple[IntMat, int]:
    n = A.ncols
    if A.nrows != n - 1:
        raise BadShape(f"expected an {n - 1}x{n} matrix, got {A.nrows}x{n}")
    if not is_primitive(A):
        raise NotPrimitive("input rows are not primitive")
    lam = max(max_norm(A), 2)
    cap = restart_cap(n)
    for attempt in range(cap + 1):
        last = _sample_rows(gen, 1, n, lam)
        B = IntMat(list(A.rows) + last).T
        if det(B) != 0:
            return determinant_reduce(B, check=False).T, attempt
    raise RestartLimitExceeded(f"no nonsingular completion after {cap} restarts", cap)


def complete_unimodular(A: AnyMat, rng: RngLike) -> CompletionResult:
    """Las Vegas completion of a primitive k x n matrix to a unimodular one.

    The first ``k`` rows of ``U`` are ``A``. Pass an :class:`EmptyMat` for
    k = 0. Each attempt appends random columns to ``A^T`` (entries below
    :func:`completion_lambda`) and rectifies them by iterated determinant
    reduction; attempts that end singular or with ``|det| != 1`` restart.

    When ``n - k > 4`` and ``n >= 5`` only the last four columns are
    rectified, which succeeds whenever the first ``n - 4`` columns are
    primitive. Otherwise every appended column is rectified and the first
    nonsingular draw always succeeds.

    Raises NotPrimitive, BadShape, or RestartLimitExceeded.
    """
    gen = as_generator(rng)
    k, n = A.nrows, A.ncols
    if k >= n:
        raise BadShape(f"need k < n, got k={k}, n={n}")
    if k and not is_primitive(A):
        raise NotPrimitive("input rows are not primitive")
    lam = completion_lambda(A)
    if k == n - 1:
        U, restarts = _complete_one_row(A, gen)
        return CompletionResult(U=U, restarts=restarts, lambda_used=max(max_norm(A), 2))

    rounds = 4 if (n - k > 4 and n >= 5) else n - k
    given = list(A.rows) if isinstance(A, IntMat) else []
    cap = restart_cap(n)
    for attempt in range(cap + 1):
        rows = given + _sample_rows(gen, n - k, n, lam)
        B = IntMat(rows).T
        if det(B) == 0:
            continue
        B = iterated_determinant_reduce(B, rounds)
        if abs(det(B)) == 1:
            return CompletionResult(U=B.T, restarts=attempt, lambda_used=lam)
        if rounds == n - k:
            # cannot happen for primitive input; keep retrying but record it
            log.warning("full rectification left |det| != 1 (attempt %d)", attempt)
    raise RestartLimitExceeded(f"no unimodular completion after {cap} restarts", cap)
