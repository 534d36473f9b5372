"""Closed-form lower bounds on the chance a random extension stays primitive.

All bound formulas are evaluated in exact rational arithmetic. The
lambda -> infinity limit, a product of reciprocal zeta values, is a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidParams

TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class BoundParams:
    """``(n, k, s, lam)``: dimension, given rows, slack and entry bound.

    The extended matrix has ``n - s - 1`` rows, the first ``k`` of them
    fixed; the rest are sampled uniformly from ``{0, ..., lam - 1}``.
    """

    n: int
    k: int
    s: int
    lam: int

    def __post_init__(self):
        n, k, s, lam = self.n, self.k, self.s, self.lam
        if not 0 <= k < n:
            raise InvalidParams(f"need 0 <= k < n, got k={k}, n={n}")
        if not 0 <= s <= n - k - 2:
            raise InvalidParams(f"need 0 <= s <= n-k-2 = {n - k - 2}, got s={s}")
        if lam < 2:
            raise InvalidParams(f"need lambda >= 2, got {lam}")

    @property
    def rows(self) -> int:
        return self.n - self.s - 1


def theorem1_bound(p: BoundParams) -> Fraction:
    """Lower bound on the primitivity probability; may be negative."""
    n, k, s, lam = p.n, p.k, p.s, Fraction(p.lam)
    added = n - k - s - 1
    small_primes = 4 * TWO_THIRDS ** (s + 1) * (1 - TWO_THIRDS**added)
    large_primes = 2 * Fraction((n - s) ** 2) / lam ** (s + 2) * (1 - 1 / lam**added)
    return 1 - small_primes - large_primes


def simple_bound(n: int, s: int, lam: int) -> Fraction:
    """The k-free weakening ``1 - 4(2/3)^(s+1) - 2(n-s)^2 / lam^(s+2)``."""
    if lam < 2 or s < 0 or n < s + 2:
        raise InvalidParams(f"invalid (n={n}, s={s}, lambda={lam})")
    return 1 - 4 * TWO_THIRDS ** (s + 1) - Fraction(2 * (n - s) ** 2, lam ** (s + 2))


def oversimplified_bound(s: int, delta: Fraction) -> Fraction:
    """``1 - (4 + delta)(2/3)^(s+1)``, meaningful once lambda is large."""
    delta = Fraction(delta)
    if s < 0 or not 0 < delta < 1:
        raise InvalidParams(f"need s >= 0 and 0 < delta < 1, got s={s}, delta={delta}")
    return 1 - (4 + delta) * TWO_THIRDS ** (s + 1)


def is_usable(bound: Fraction) -> bool:
    return 0 < bound < 1


def min_usable_s(n: int, k: int, lam: int) -> Optional[int]:
    """Smallest admissible slack whose bound lies strictly inside (0, 1)."""
    if not (0 <= k < n - 1) or lam < 2:
        raise InvalidParams(f"need 0 <= k < n-1 and lambda >= 2 (n={n}, k={k}, lambda={lam})")
    for s in range(n - k - 1):
        if is_usable(theorem1_bound(BoundParams(n, k, s, lam))):
            return s
    return None


# Bernoulli numbers B2, B4, B6, B8 for the Euler-Maclaurin tail.
_BERNOULLI = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30))
_ZETA_TERMS = 64


def zeta(j: int) -> float:
    """Riemann zeta at an integer ``j >= 2``.

    Direct sum of the first 63 terms, then an Euler-Maclaurin estimate of
    the tail starting at N = 64. The truncation error is below 1e-20 for
    every j >= 2, so double rounding dominates.
    """
    if j < 2:
        raise InvalidParams(f"zeta needs an integer argument >= 2, got {j}")
    N = _ZETA_TERMS
    head = math.fsum(t ** -float(j) for t in range(1, N))
    tail = [N ** (1.0 - j) / (j - 1), 0.5 * N ** -float(j)]
    # sum_k B_2k / (2k)! * j(j+1)...(j+2k-2) * N^(-j-2k+1)
    rising = float(j)
    for idx, b in enumerate(_BERNOULLI):
        k2 = 2 * (idx + 1)
        tail.append(float(b) / math.factorial(k2) * rising * N ** (-j - k2 + 1.0))
        rising *= (j + k2 - 1) * (j + k2)
    return math.fsum([head] + tail)


def limit_probability(n: int, s: int) -> float:
    """Product of 1/zeta(j) for j = s+2 .. n."""
    if s < 0 or s + 2 > n:
        raise InvalidParams(f"need 0 <= s and s + 2 <= n, got n={n}, s={s}")
    out = 1.0
    for j in range(s + 2, n + 1):
        out /= zeta(j)
    return out


def render(x: Union[Fraction, float, int], places: int = 4, mode: str = "half-even") -> str:
    """Fixed-point decimal string of ``x``.

    ``mode`` is ``"half-even"`` (round half to even) or ``"truncate"``
    (drop the remaining digits, rounding toward zero).
    """
    rounding = {"half-even": ROUND_HALF_EVEN, "truncate": ROUND_DOWN}.get(mode)
    if rounding is None:
        raise ValueError(f"unknown rendering mode {mode!r}")
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(x, Fraction):
            # exact: scale, round as an integer, then place the point
            scaled = x * 10**places
            if mode == "half-even":
                q = round(scaled)
            else:
                q = math.trunc(scaled)
            d = Decimal(q).scaleb(-places)
        else:
            d = Decimal(x).quantize(Decimal(1).scaleb(-places), rounding=rounding)
        return f"{d:.{places}f}"
