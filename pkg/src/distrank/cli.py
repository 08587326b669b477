"""Command-line interface.

Subcommands: ``test`` (run one two-sample test on CSV input), ``power``
(run a preset or configured experiment), ``asymptotic`` (analytic tables),
``contiguity`` (the local-alternative contiguity checker) and ``null-dist``
(dump an exact permutation null).  Exit codes: 0 success, 1 usage error,
2 runtime error, 3 hypothesis rejected (``test`` only).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import asymptotics, harness, lehmann, ranktests, scores
from .classical import hotelling_test, liu_singh_test
from .distances import KERNELS, PooledSample
from .harness import DEFAULT_SEED, TABLE_DELTAS, ExperimentConfig
from .io import load_two_samples
from .rng import RngSeed

_SCHEMES = ("simple", "conditional", "randomized", "ks", "hotelling", "liu-singh")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="run one two-sample test on CSV input")
    t.add_argument("files", nargs="+", help="two CSV files, or one with a 'group' column")
    t.add_argument("--scheme", choices=_SCHEMES, default="randomized")
    t.add_argument("--score", choices=scores.SCORE_KINDS, default=scores.WILCOXON)
    t.add_argument("--kernel", choices=KERNELS, default="euclidean")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--reps", type=int, default=999, help="permutation count (liu-singh)")
    t.add_argument("--basis", type=str, default=None, help="comma-separated basis indices")
    t.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("power", help="run a power experiment")
    p.add_argument("--preset", choices=tuple(harness.PRESETS), default=None)
    p.add_argument("--config", type=str, default=None, help="JSON/TOML experiment config")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--extended", action="store_true", help="include the largest sample sizes")
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", type=str, default=None)

    a = sub.add_parser("asymptotic", help="analytic efficiency, power and slope tables")
    a.add_argument("--table", choices=("efficiencies", "local-powers", "slopes"), required=True)
    a.add_argument("--alpha", type=float, default=0.05)
    a.add_argument("--format", choices=("csv", "json", "text"), default="text")
    a.add_argument("--out", type=str, default=None)

    c = sub.add_parser("contiguity", help="verify contiguity of a local alternative")
    c.add_argument("--family", choices=lehmann.FAMILIES, default=lehmann.WILCOXON)
    c.add_argument("--delta0", type=float, default=1.0)
    c.add_argument("--m", type=int, default=500)
    c.add_argument("--n", type=int, default=500)

    n = sub.add_parser("null-dist", help="dump an exact permutation null distribution")
    n.add_argument("--m", type=int, required=True)
    n.add_argument("--n", type=int, required=True)
    n.add_argument(
        "--score", choices=scores.SCORE_KINDS + ("wilcoxon-raw",), default=scores.WILCOXON
    )
    n.add_argument("--score-mode", choices=("exact", "approximate"), default="exact")
    n.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _run_test(args) -> int:
    x, y = load_two_samples(args.files)
    seed = RngSeed(args.seed)
    if args.scheme == "hotelling":
        result = hotelling_test(x, y, args.alpha)
    elif args.scheme == "liu-singh":
        result = liu_singh_test(x, y, args.alpha, permutations=args.reps, seed=seed)
    elif args.scheme == "ks":
        if x.shape[1] != 1:
            raise ValueError("the ks scheme needs univariate input")
        result = ranktests.ks_two_sample(x.ravel(), y.ravel(), args.alpha, seed=seed)
    else:
        pooled = PooledSample.from_groups(x, y)
        if args.scheme == "simple":
            result = ranktests.simple_rank_test(
                pooled, args.kernel, args.score, args.alpha, seed=seed
            )
        elif args.scheme == "randomized":
            result = ranktests.randomized_rank_test(
                pooled, args.kernel, args.score, args.alpha, seed=seed
            )
        else:
            if args.basis is not None:
                basis = [int(b) for b in args.basis.split(",")]
            else:
                basis = list(range(min(pooled.dimension, pooled.m - 1)))
            result = ranktests.conditional_rank_test(
                pooled, basis, args.kernel, args.score, args.alpha, seed=seed
            )
    if args.format == "json":
        print(result.to_json())
    else:
        print(result)
    return 3 if result.reject else 0


def _run_power(args) -> int:
    if (args.preset is None) == (args.config is None):
        raise _UsageError("power needs exactly one of --preset or --config")
    if args.preset is not None:
        kwargs = {}
        if args.reps is not None:
            kwargs["replications"] = args.reps
        if args.seed is not None:
            kwargs["seed"] = args.seed
        if args.workers is not None:
            kwargs["workers"] = args.workers
        if args.alpha is not None:
            kwargs["alpha"] = args.alpha
        if args.extended:
            kwargs["extended"] = True
        config = harness.PRESETS[args.preset](**kwargs)
    else:
        config = ExperimentConfig.from_file(args.config)
        overrides = {}
        if args.reps is not None:
            overrides["replications"] = args.reps
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.workers is not None:
            overrides["workers"] = args.workers
        if args.alpha is not None:
            overrides["alpha"] = args.alpha
        if overrides:
            config = ExperimentConfig(**{**config.__dict__, **overrides})
    result = harness.run_experiment(config)
    _emit(harness.emit_table(result, args.format), args.out)
    failed = [r for r in result.cells if r.error]
    return 2 if failed else 0


def _run_asymptotic(args) -> int:
    if args.table == "efficiencies":
        config = ExperimentConfig(experiment="efficiencies")
    elif args.table == "slopes":
        config = ExperimentConfig(experiment="slope-table")
    else:
        rows = []
        for d0 in TABLE_DELTAS:
            rows.append(
                {
                    "delta0": d0,
                    "wilcoxon": asymptotics.wilcoxon_local_power(d0, 0.5, args.alpha),
                    "ks": asymptotics.ks_local_power(d0, 0.5, args.alpha),
                }
            )
        if args.format == "json":
            _emit(json.dumps(rows, indent=2), args.out)
        elif args.format == "csv":
            lines = ["delta0,wilcoxon,ks"]
            lines += [f"{r['delta0']},{r['wilcoxon']!r},{r['ks']!r}" for r in rows]
            _emit("\n".join(lines) + "\n", args.out)
        else:
            lines = ["delta0   As.W    As.KS"]
            lines += [f"{r['delta0']:6.1f}  {r['wilcoxon']:.3f}  {r['ks']:.3f}" for r in rows]
            _emit("\n".join(lines) + "\n", args.out)
        return 0
    result = harness.run_experiment(config)
    _emit(harness.emit_table(result, args.format), args.out)
    return 0


def _run_contiguity(args) -> int:
    report = asymptotics.contiguity_check(args.family, args.delta0, args.m, args.n)
    grid = [report.max_density_ratio * c for c in (0.5, 0.9, 1.0 + 1e-9, 1.5, 10.0)]
    payload = {
        "family": report.family,
        "delta0": report.delta0,
        "m": report.m,
        "n": report.n,
        "delta_n": report.delta_n,
        "sum_h2": report.sum_h2,
        "bound": report.bound,
        "max_density_ratio": report.max_density_ratio,
        "tail_mass": {f"{c:.6g}": report.tail_mass(c) for c in grid},
        "passed": report.passed,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _run_null_dist(args) -> int:
    big_n = args.m + args.n
    if args.score == "wilcoxon-raw":
        sc = scores.raw_rank_scores(big_n)
        scale = 1.0
    else:
        sc = scores.score_vector(args.score, big_n, args.score_mode)
        scale = None
    null = ranktests.null_distribution(args.m, args.n, sc, "exact", scale=scale)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "mode": null.mode,
                    "support": [float(s) for s in null.support],
                    "probs": [float(p) for p in null.probs],
                }
            )
        )
    else:
        print("statistic,probability")
        for s, p in zip(null.support, null.probs):
            print(f"{float(s)!r},{float(p)!r}")
    return 0


class _UsageError(Exception):
    pass


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 on --help
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "test":
            return _run_test(args)
        if args.command == "power":
            return _run_power(args)
        if args.command == "asymptotic":
            return _run_asymptotic(args)
        if args.command == "contiguity":
            return _run_contiguity(args)
        return _run_null_dist(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
