"""``unimat`` command line.

Exit codes: 0 success / primitive, 1 domain-negative result or wrapped
library failure, 2 usage, I/O or parse error, 3 restart cap exceeded.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, completion, experiments, linalg, primitivity
from .errors import InvalidParams, ParseError, RestartLimitExceeded, UnimatError
from .matrix import EmptyMat, IntMat, max_norm, parse_matrix, serialize_matrix

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESTARTS = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"unimat: {msg}", file=sys.stderr)


def _read_matrix(path: str):
    try:
        data = Path(path).read_bytes() if path != "-" else sys.stdin.buffer.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_matrix(data)
    except ParseError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _read_intmat(path: str) -> IntMat:
    A = _read_matrix(path)
    if isinstance(A, EmptyMat):
        raise _UsageError(f"{path}: this command needs at least one row")
    return A


def _write_matrix(A, out) -> None:
    payload = serialize_matrix(A)
    if out in (None, "-"):
        sys.stdout.write(payload.decode("ascii"))
        return
    try:
        Path(out).write_bytes(payload)
    except OSError as exc:
        raise _UsageError(f"cannot write {out}: {exc.strerror or exc}") from None


def _resolve_seed(seed) -> int:
    if seed is None:
        seed = secrets.randbits(64)
    print(f"seed={seed}", file=sys.stderr)
    return seed


def cmd_check(args) -> int:
    A = _read_intmat(args.matrix)
    ok = primitivity.is_primitive(A)
    print("primitive" if ok else "not primitive")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_complete(args) -> int:
    A = _read_matrix(args.matrix)
    seed = _resolve_seed(args.seed)
    res = completion.complete_unimodular(A, completion.RngSpec(seed))
    _write_matrix(res.U, args.out)
    print(f"restarts={res.restarts} max_norm={max_norm(res.U)}", file=sys.stderr)
    return EXIT_OK


def cmd_detred(args) -> int:
    A = _read_intmat(args.matrix)
    _write_matrix(completion.determinant_reduce(A), args.out)
    return EXIT_OK


def cmd_hnf(args) -> int:
    res = linalg.hnf(_read_intmat(args.matrix))
    _write_matrix(res.H, args.out)
    return EXIT_OK


def cmd_det(args) -> int:
    print(linalg.det(_read_intmat(args.matrix)))
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.kind == "theorem1":
        value = bounds.theorem1_bound(bounds.BoundParams(args.n, args.k, args.s, args.lam))
    elif args.kind == "simple":
        value = bounds.simple_bound(args.n, args.s, args.lam)
    else:
        value = bounds.oversimplified_bound(args.s, Fraction(args.delta))
    print(bounds.render(value, args.places, args.rounding))
    print(f"exact={value}")
    return EXIT_OK


def cmd_limit_prob(args) -> int:
    value = bounds.limit_probability(args.n, args.s)
    print(bounds.render(value, args.places, args.rounding))
    print(f"value={value!r}")
    return EXIT_OK


def _parse_config_file(path: str, args) -> list[experiments.ExperimentConfig]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    configs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (6, 7):
            raise _UsageError(f"{path}:{lineno}: expected 'n k s lambda trials seed [base]'")
        try:
            n, k, s, lam, trials, seed = (int(t) for t in tokens[:6])
        except ValueError:
            raise _UsageError(f"{path}:{lineno}: non-integer field") from None
        mode = _base_mode(tokens[6] if len(tokens) == 7 else "random")
        configs.append(_config(n, k, s, lam, trials, seed, mode, args))
    if not configs:
        raise _UsageError(f"{path}: no configurations")
    return configs


def _base_mode(name: str) -> str:
    modes = {"random": "random_signed", "ones": "fixed_all_ones"}
    if name not in modes:
        raise _UsageError(f"unknown base {name!r} (use 'random' or 'ones')")
    return modes[name]


def _config(n, k, s, lam, trials, seed, mode, args) -> experiments.ExperimentConfig:
    try:
        return experiments.ExperimentConfig(
            n, k, s, lam, trials, seed, mode,
            fresh_base_per_trial=args.fresh_base_per_trial,
        )
    except InvalidParams as exc:
        raise _UsageError(str(exc)) from None


def cmd_experiment(args) -> int:
    flag_groups = [args.n, args.k, args.s, args.lam]
    sources = sum(x is not None for x in (args.config, args.table)) + any(flag_groups)
    if sources != 1:
        raise _UsageError("give exactly one of --config, --table, or --n/--k/--s/--lambda")
    if args.config:
        configs = _parse_config_file(args.config, args)
    elif args.table:
        seed = _resolve_seed(args.seed[0] if args.seed else None)
        trials = args.trials[0] if args.trials else 10_000
        configs = experiments.preset_configs(args.table, trials, seed)
    else:
        if not all(flag_groups) or len({len(g) for g in flag_groups}) != 1:
            raise _UsageError("--n, --k, --s and --lambda must be repeated the same number of times")
        count = len(args.n)
        trials = _expand(args.trials, count, 10_000, "--trials")
        seeds = _expand(args.seed, count, None, "--seed")
        bases = _expand(args.base, count, "random", "--base")
        configs = [
            _config(n, k, s, lam, t, _resolve_seed(sd), _base_mode(b), args)
            for n, k, s, lam, t, sd, b in zip(*flag_groups, trials, seeds, bases)
        ]
    sys.stdout.write(experiments.run_table(configs, args.format, args.workers))
    return EXIT_OK


def _expand(values, count, default, name):
    if not values:
        return [default] * count
    if len(values) == 1:
        return values * count
    if len(values) != count:
        raise _UsageError(f"{name} given {len(values)} times for {count} configurations")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimat",
        description="Exact unimodular completion, primitivity tests and bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="is the k x n matrix primitive?")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("complete", help="complete a primitive matrix to a unimodular one")
    p.add_argument("matrix")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("detred", help="determinant reduction of a nonsingular matrix")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_detred)

    p = sub.add_parser("hnf", help="row Hermite normal form")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hnf)

    p = sub.add_parser("det", help="exact determinant")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_det)

    def rendering(p):
        p.add_argument("--places", type=int, default=4)
        p.add_argument("--rounding", choices=("half-even", "truncate"), default="half-even")

    p = sub.add_parser("bound", help="lower bound on the primitivity probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=10**5)
    p.add_argument("--kind", choices=("theorem1", "simple", "oversimplified"), default="theorem1")
    p.add_argument("--delta", default="1/2", help="delta for --kind oversimplified")
    rendering(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("limit-prob", help="lambda -> infinity primitivity probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    rendering(p)
    p.set_defaults(func=cmd_limit_prob)

    p = sub.add_parser("experiment", help="Monte-Carlo primitivity rates")
    p.add_argument("--config", help="file with lines 'n k s lambda trials seed [random|ones]'")
    p.add_argument("--table", type=int, choices=range(1, 11), help="preset parameter grid")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--k", type=int, action="append")
    p.add_argument("--s", type=int, action="append")
    p.add_argument("--lambda", dest="lam", type=int, action="append")
    p.add_argument("--trials", type=int, action="append")
    p.add_argument("--seed", type=int, action="append")
    p.add_argument("--base", choices=("random", "ones"), action="append")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fresh-base-per-trial", action="store_true")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except RestartLimitExceeded as exc:
        _err(str(exc))
        return EXIT_RESTARTS
    except UnimatError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
