"""Monte-Carlo estimates of the primitivity probability of random extensions.

A run draws (or takes) a primitive k x n base matrix, extends it many times
with ``n - s - 1 - k`` random rows over ``{0, ..., lam - 1}``, and counts
primitive outcomes. Reports sit next to the closed-form lower bound and,
for k = 0, the lambda -> infinity limit.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bounds import BoundParams, is_usable, limit_probability, render, theorem1_bound
from .completion import random_extension
from .errors import InvalidParams, NotPrimitive, RestartLimitExceeded
from .matrix import AnyMat, EmptyMat, IntMat
from .primitivity import is_primitive

BASE_MODES = ("random_signed", "fixed_all_ones", "provided")
MAX_BASE_REGENERATIONS = 10_000
WILSON_Z = 1.959963984540054

CSV_HEADER = (
    "n", "k", "s", "lambda", "trials", "seed", "successes",
    "exp_rate", "th1_bound", "limit_prob", "ci_low", "ci_high",
)


def derive_seed(seed: int, *labels) -> int:
    """Deterministic 64-bit child seed for ``(seed, *labels)``."""
    key = "/".join(str(x) for x in (seed, *labels)).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    k: int
    s: int
    lam: int
    trials: int
    seed: int
    base_mode: str = "random_signed"
    base_matrix: Optional[IntMat] = field(default=None, compare=False)
    fresh_base_per_trial: bool = False

    def __post_init__(self):
        BoundParams(self.n, self.k, self.s, self.lam)
        if self.trials < 1:
            raise InvalidParams(f"need trials >= 1, got {self.trials}")
        if self.base_mode not in BASE_MODES:
            raise InvalidParams(f"unknown base mode {self.base_mode!r}")
        if self.base_mode == "fixed_all_ones" and self.k != 1:
            raise InvalidParams("the all-ones base is a single row (k = 1)")
        if self.base_mode == "provided":
            B = self.base_matrix
            if B is None or B.shape != (self.k, self.n):
                raise InvalidParams(f"provided base must be {self.k}x{self.n}")
            if not is_primitive(B):
                raise NotPrimitive("provided base matrix is not primitive")

    @property
    def params(self) -> BoundParams:
        return BoundParams(self.n, self.k, self.s, self.lam)

    @property
    def rows(self) -> int:
        return self.n - self.s - 1


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    successes: int
    theorem1: Fraction
    limit_prob: Optional[float]
    wilson95: tuple[float, float]

    @property
    def trials(self) -> int:
        return self.config.trials

    @property
    def empirical_rate(self) -> float:
        return self.successes / self.config.trials

    @property
    def theorem1_usable(self) -> bool:
        return is_usable(self.theorem1)


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def generate_base_primitive(n: int, k: int, lam: int, rng: random.Random) -> AnyMat:
    """Random primitive k x n matrix with entries uniform on [-lam, lam].

    Non-primitive draws are discarded and redrawn.
    """
    if k == 0:
        return EmptyMat(n)
    if not 1 <= k < n:
        raise InvalidParams(f"need 0 <= k < n, got k={k}, n={n}")
    r = rng.randint
    for _ in range(MAX_BASE_REGENERATIONS):
        A = IntMat([[r(-lam, lam) for _ in range(n)] for _ in range(k)])
        if is_primitive(A):
            return A
    raise RestartLimitExceeded(
        f"no primitive {k}x{n} base in {MAX_BASE_REGENERATIONS} draws",
        MAX_BASE_REGENERATIONS,
    )


def base_matrix(cfg: ExperimentConfig, rng: random.Random) -> AnyMat:
    if cfg.base_mode == "provided":
        return cfg.base_matrix
    if cfg.base_mode == "fixed_all_ones":
        return IntMat([[1] * cfg.n])
    return generate_base_primitive(cfg.n, cfg.k, cfg.lam, rng)


def _run_trials(cfg: ExperimentConfig, start: int, stop: int) -> int:
    base = None if cfg.fresh_base_per_trial else base_matrix(
        cfg, random.Random(derive_seed(cfg.seed, "base"))
    )
    hits = 0
    for t in range(start, stop):
        rng = random.Random(derive_seed(cfg.seed, "trial", t))
        A = base if base is not None else base_matrix(cfg, rng)
        hits += is_primitive(random_extension(A, cfg.rows, cfg.lam, rng))
    return hits


def empirical_probability(cfg: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    """Run ``cfg.trials`` random extensions and count primitive ones.

    Trial ``t`` draws from its own generator seeded by
    ``derive_seed(seed, "trial", t)``, so the count does not depend on
    ``workers``.
    """
    if workers > 1 and cfg.trials > 1:
        step = math.ceil(cfg.trials / workers)
        bounds = [(i, min(i + step, cfg.trials)) for i in range(0, cfg.trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_run_trials, cfg, a, b) for a, b in bounds]
            successes = sum(f.result() for f in futs)
    else:
        successes = _run_trials(cfg, 0, cfg.trials)
    return make_report(cfg, successes)


def make_report(cfg: ExperimentConfig, successes: int) -> ExperimentReport:
    return ExperimentReport(
        config=cfg,
        successes=successes,
        theorem1=theorem1_bound(cfg.params),
        limit_prob=limit_probability(cfg.n, cfg.s) if cfg.k == 0 else None,
        wilson95=wilson_interval(successes, cfg.trials),
    )


def _report_cells(rep: ExperimentReport) -> dict[str, str]:
    cfg = rep.config
    lo, hi = rep.wilson95
    return {
        "n": str(cfg.n),
        "k": str(cfg.k),
        "s": str(cfg.s),
        "lambda": str(cfg.lam),
        "trials": str(cfg.trials),
        "seed": str(cfg.seed),
        "successes": str(rep.successes),
        "exp_rate": render(Fraction(rep.successes, cfg.trials)),
        "th1_bound": render(rep.theorem1) if rep.theorem1_usable else "n/a",
        "limit_prob": render(rep.limit_prob) if rep.limit_prob is not None else "n/a",
        "ci_low": render(lo),
        "ci_high": render(hi),
    }


def render_reports(reports: Sequence[ExperimentReport], fmt: str = "csv") -> str:
    """Render reports as CSV (fixed header) or a markdown table."""
    cells = [_report_cells(r) for r in reports]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in cells:
            w.writerow(c[h] for h in CSV_HEADER)
        return buf.getvalue()
    if fmt == "markdown":
        head = ["n", "k", "s", "λ", "Exp.", "Th. 1", "Limit probability", "CI (95%)", "seed"]
        lines = [
            "| " + " | ".join(head) + " |",
            "|" + "|".join("---:" for _ in head) + "|",
        ]
        for c in cells:
            row = [
                c["n"], c["k"], c["s"], c["lambda"], c["exp_rate"], c["th1_bound"],
                c["limit_prob"], f"[{c['ci_low']}, {c['ci_high']}]", c["seed"],
            ]
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def run_table(configs: Iterable[ExperimentConfig], fmt: str = "csv", workers: int = 1) -> str:
    configs = list(configs)
    if not configs:
        raise InvalidParams("run_table needs at least one configuration")
    return render_reports([empirical_probability(c, workers) for c in configs], fmt)


def preset_configs(table: int, trials: int = 10_000, seed: int = 0, lam: int = 10**5) -> list[ExperimentConfig]:
    """Parameter grids of the published experiment tables (numbered 1-10).

    1-2: k = 0 with s = 3 and s = n-2; 3-4: k = 1 with s = 3 and s = n-3;
    5-6: k = n/2 with s = 3 and s = n/2-2; 7-9: s = 2, 1, 0 for
    k in {0, 1, n/2}; 10: the all-ones row with s in {0, 1, 2}.
    Each configuration gets its own derived seed.
    """
    grid: list[tuple] = []
    big = range(16, 37, 4)
    if table == 1:
        grid = [(n, 0, 3, "random_signed") for n in (5, 10, 15, 20)]
    elif table == 2:
        grid = [(n, 0, n - 2, "random_signed") for n in (5, 10, 15, 20)]
    elif table == 3:
        grid = [(n, 1, 3, "random_signed") for n in range(10, 31, 5)]
    elif table == 4:
        grid = [(n, 1, n - 3, "random_signed") for n in range(5, 31, 5)]
    elif table == 5:
        grid = [(n, n // 2, 3, "random_signed") for n in big]
    elif table == 6:
        grid = [(n, n // 2, n - n // 2 - 2, "random_signed") for n in big]
    elif table in (7, 8, 9):
        s = 9 - table
        grid = [(n, k, s, "random_signed") for k in ("0", "1", "n/2") for n in big]
        grid = [(n, {"0": 0, "1": 1}.get(k, n // 2), s, m) for n, k, s, m in grid]
    elif table == 10:
        grid = [(n, 1, s, "fixed_all_ones") for s in (0, 1, 2) for n in big]
    else:
        raise InvalidParams(f"no preset table {table}")
    return [
        ExperimentConfig(n, k, s, lam, trials, derive_seed(seed, "table", table, i), mode)
        for i, (n, k, s, mode) in enumerate(grid)
    ]
