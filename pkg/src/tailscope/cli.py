"""Command-line front end.

Exit codes: 0 success, 1 I/O error, 2 validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from .classifier import ClassifierConfig, PlotTransform, classify, default_range, plot_series
from .distributions import reference_distributions, parse_spec
from .errors import TailscopeError
from .estimator import tail_profile
from .ingestion import (
    DiscretizationSpec,
    discretize,
    load_counts,
    load_profile,
    load_values,
    write_profile_csv,
)
from .simulation import STUDY_SAMPLE_SIZES, StudyConfig, run_study, write_study


class _UsageError(Exception):
    pass


@contextmanager
def _output(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _add_input(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--values", metavar="PATH", help="raw observations, one number per line")
    src.add_argument("--counts", metavar="PATH", help="symbol,count CSV")
    p.add_argument("--delta", type=float, default=1e-4,
                   help="bin width for --values (default 1e-4)")
    p.add_argument("--tail", choices=["left", "right"], default="right",
                   help="which tail to bin for --values (default right)")
    p.add_argument("--v1", type=int, help="first v of the profile (default 6)")
    p.add_argument("--v2", type=int,
                   help="last v of the profile (default min(500, max(99, n/20)), capped at n-1)")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")


def _table(args):
    if args.counts:
        return load_counts(args.counts)
    return discretize(load_values(args.values), DiscretizationSpec(args.delta, args.tail))


def _range(args, n):
    if args.v1 is not None and args.v2 is not None:
        return args.v1, args.v2
    d1, d2 = default_range(n)
    return (d1 if args.v1 is None else args.v1), (d2 if args.v2 is None else args.v2)


def cmd_profile(args) -> int:
    ft = _table(args)
    v1, v2 = _range(args, ft.n)
    profile = tail_profile(ft, v1, v2)
    with _output(args.out) as fh:
        write_profile_csv(profile, fh)
    return 0


def cmd_classify(args) -> int:
    ft = _table(args)
    v1, v2 = _range(args, ft.n)
    config = ClassifierConfig(v1, v2, flat_threshold=args.flat_threshold,
                              min_growth=args.min_growth, fit_start=args.fit_start)
    report = classify(tail_profile(ft, v1, v2), config).to_dict()
    report["n"] = ft.n
    with _output(args.out) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_simulate(args) -> int:
    if args.full_grid:
        dists = reference_distributions() if args.include_exp else reference_distributions()[:3]
        sizes = list(STUDY_SAMPLE_SIZES)
    else:
        if not args.dist or not args.n:
            raise _UsageError("simulate needs --dist and --n (or --full-grid)")
        dists = [parse_spec(s) for s in args.dist]
        sizes = args.n
    cfg = StudyConfig(dists, sizes, args.reps, args.seed)
    cm = run_study(cfg, workers=args.workers)
    conf, prec = write_study(cm, args.out)
    print(f"wrote {conf} and {prec}", file=sys.stderr)
    return 0


def cmd_plot(args) -> int:
    profile = load_profile(args.profile)
    transform = PlotTransform(args.transform)
    series = plot_series(profile, transform, min_points=1)
    out = Path(args.out)
    if out.suffix.lower() == ".svg":
        from .svg import line_chart

        text = line_chart(series.x, series.y, title=f"Plot {transform.value}",
                          x_label=transform.x_label, y_label=transform.y_label)
        out.write_text(text, encoding="utf-8")
        return 0
    with open(out, "w", encoding="utf-8", newline="") as fh:
        if series.dropped:
            fh.write(f"# dropped {series.dropped} profile entries "
                     f"(v < {transform.min_v} or T_v <= 0)\n")
        fh.write(f"{transform.x_label.replace(' ', '_')},{transform.y_label.replace(' ', '_')}\n")
        for x, y in zip(series.x, series.y):
            fh.write(f"{x:.15g},{y:.15g}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailscope",
        description="Entropic tail profiles and tail-type classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="write the observed tail profile as v,T_v CSV")
    _add_input(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("classify", help="classify the tail and write a JSON report")
    _add_input(p)
    p.add_argument("--flat-threshold", type=float, default=0.3,
                   help="Kendall trend below which the profile is flat (default 0.3)")
    p.add_argument("--min-growth", type=float, default=0.15,
                   help="Plot II slope below which the profile is flat (default 0.15)")
    p.add_argument("--fit-start", type=int, default=10,
                   help="correlations use v >= max(v1, fit-start) (default 10)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="Monte Carlo confusion and precision tables")
    p.add_argument("--dist", nargs="+", metavar="SPEC",
                   help="e.g. power:lambda=2 subexp:lambda=1,alpha=0.5 nearexp:lambda=1,beta=2")
    p.add_argument("--n", nargs="+", type=int, metavar="INT", help="sample sizes")
    p.add_argument("--reps", type=int, default=500, help="trials per cell (default 500)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")
    p.add_argument("--workers", type=int,
                   help="worker processes (default: CPU count, capped by TAILSCOPE_THREADS)")
    p.add_argument("--full-grid", action="store_true",
                   help="full replication grid: distributions 1-3, n in "
                        f"{list(STUDY_SAMPLE_SIZES)}; pair with --reps 10000 (slow)")
    p.add_argument("--include-exp", action="store_true",
                   help="with --full-grid, also run the exponential distribution")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plot", help="export one entropic plot as CSV or SVG")
    p.add_argument("--profile", required=True, metavar="PATH", help="v,T_v CSV")
    p.add_argument("--transform", required=True, choices=[t.value for t in PlotTransform])
    p.add_argument("--out", required=True, metavar="PATH", help="output .csv or .svg")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except TailscopeError as exc:
        print(f"tailscope: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"tailscope: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
