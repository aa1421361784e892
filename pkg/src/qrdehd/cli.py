"""Command-line interface.

Subcommands:
  quantile  -- evaluate a quantile estimator at a list of probabilities
  density   -- build the QRDE pseudo-histogram and emit its step curve
  jitter    -- deterministically spread tied values at a given resolution
  compare   -- QRDE-HD vs Gaussian KDE vs equal-width histogram

Exit codes: 0 success, 2 usage/input errors, 3 degenerate-bin report in
strict mode (the report text goes to stderr and recommends jittering).
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import dataio
from .estimators import HarrellDavis, HyndmanFan7, Sample, TrimmedHarrellDavis
from .jitter import jitter
from .qrde import DegenerateBinReport, build_qrde, compare_estimates
from .special import NumericalError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrdehd",
        description="Quantile-respectful density estimation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default=None,
                       help="input file (default: stdin)")
        p.add_argument("--input-format", choices=dataio.SAMPLE_FORMATS,
                       default="plain", help="sample format (default: plain)")

    def add_estimator_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--estimator", choices=("hd", "thd", "hf7"), default="hd",
                       help="quantile estimator (default: hd)")
        p.add_argument("--trim-width", type=float, default=None,
                       help="THD trim width in (0, 1] (default: 1/sqrt(n))")

    p = sub.add_parser("quantile", help="evaluate quantiles")
    add_input_args(p)
    add_estimator_args(p)
    p.add_argument("--p", dest="probs", default="0,0.25,0.5,0.75,1",
                   help="comma-separated probabilities (default: quartiles)")
    p.add_argument("--format", choices=dataio.TABLE_FORMATS, default="csv")

    p = sub.add_parser("density", help="build the QRDE density curve")
    add_input_args(p)
    add_estimator_args(p)
    p.add_argument("--bins", type=int, default=1000,
                   help="pseudo-histogram bin count (default: 1000)")
    p.add_argument("--format", choices=dataio.CURVE_FORMATS, default="csv")
    p.add_argument("--p-lo", type=float, default=0.0,
                   help="lower probability cut for the displayed bins")
    p.add_argument("--p-hi", type=float, default=1.0,
                   help="upper probability cut for the displayed bins")
    p.add_argument("--permissive", action="store_true",
                   help="keep degenerate bins (height inf) instead of failing")
    p.add_argument("--figure", default=None, metavar="PATH",
                   help="also render the curve to an image file")

    p = sub.add_parser("jitter", help="spread tied values deterministically")
    add_input_args(p)
    p.add_argument("--resolution", type=float, required=True,
                   help="measurement resolution s (same units as the data)")

    p = sub.add_parser("compare", help="QRDE-HD vs KDE vs histogram")
    add_input_args(p)
    p.add_argument("--bins", type=int, default=1000,
                   help="pseudo-histogram bin count (default: 1000)")
    p.add_argument("--bandwidth", type=float, default=None,
                   help="Gaussian KDE bandwidth (default: Silverman's rule)")
    p.add_argument("--hist-bins", type=int, default=None,
                   help="equal-width histogram bin count (default: ceil(sqrt(n)))")
    p.add_argument("--format", choices=dataio.TABLE_FORMATS, default="csv")
    p.add_argument("--figure", default=None, metavar="PATH",
                   help="also render the comparison to an image file")
    return parser


def _load_sample(args: argparse.Namespace, stdin) -> Sample:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            return dataio.read_sample(fh, args.input_format)
    return dataio.read_sample(stdin, args.input_format)


def _make_estimator(args: argparse.Namespace, sample: Sample):
    if args.estimator == "hf7":
        return HyndmanFan7()
    if args.estimator == "thd":
        width = args.trim_width
        if width is None:
            width = 1.0 / math.sqrt(sample.n)
        if not (0.0 < width <= 1.0):
            raise ValueError(f"trim width must lie in (0, 1], got {width!r}")
        return TrimmedHarrellDavis(width)
    return HarrellDavis()


def _cmd_quantile(args, stdin, stdout) -> int:
    sample = _load_sample(args, stdin)
    estimator = _make_estimator(args, sample)
    try:
        ps = [float(tok) for tok in args.probs.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"invalid probability list: {args.probs!r}") from None
    qs = [estimator(sample, p) for p in ps]
    stdout.write(dataio.write_quantiles(ps, qs, args.format))
    return EXIT_OK


def _cmd_density(args, stdin, stdout, stderr) -> int:
    sample = _load_sample(args, stdin)
    estimator = _make_estimator(args, sample)
    result = build_qrde(sample, estimator, k=args.bins, strict=not args.permissive)
    if isinstance(result, DegenerateBinReport):
        stderr.write(str(result) + "\n")
        return EXIT_DEGENERATE
    if (args.p_lo, args.p_hi) != (0.0, 1.0):
        result = result.trimmed(args.p_lo, args.p_hi)
    if result.is_degenerate:
        # permissive mode: emit the outline anyway, heights spelled "inf"
        if args.format == "svg":
            raise ValueError("cannot render an unbounded density as SVG")
        points = dataio.density_curve_points(result)
        if args.format == "csv":
            stdout.write("x,y\n")
            for x, y in points:
                stdout.write(f"{dataio.format_number(x)},{dataio.format_number(y)}\n")
        else:
            stdout.write(
                "["
                + ", ".join(
                    f"[{dataio.format_number(x)}, {dataio.format_number(y)}]"
                    for x, y in points
                )
                + "]\n"
            )
        return EXIT_OK
    stdout.write(dataio.write_density_curve(result, args.format))
    if args.figure:
        from . import plotting

        plotting.save_density_figure(result, args.figure)
    return EXIT_OK


def _cmd_jitter(args, stdin, stdout) -> int:
    sample = _load_sample(args, stdin)
    stdout.write(dataio.write_sample(jitter(sample, args.resolution), args.input_format))
    return EXIT_OK


def _cmd_compare(args, stdin, stdout, stderr) -> int:
    sample = _load_sample(args, stdin)
    result = compare_estimates(
        sample,
        k=args.bins,
        kde_bandwidth=args.bandwidth,
        hist_bins=args.hist_bins,
    )
    if isinstance(result, DegenerateBinReport):
        stderr.write(str(result) + "\n")
        return EXIT_DEGENERATE
    summary = (
        f"hf7_median={dataio.format_number(result.hf7_median)} "
        f"kde_median={dataio.format_number(result.kde_median)} "
        f"divergence={dataio.format_number(result.median_divergence)}"
    )
    rows = zip(result.grid, result.qrde_density, result.kde_density, result.hist_density)
    if args.format == "csv":
        stdout.write(f"# {summary}\n")
        stdout.write("x,qrde,kde,histogram\n")
        for x, q, kde, hist in rows:
            stdout.write(",".join(dataio.format_number(v) for v in (x, q, kde, hist)) + "\n")
    else:
        pairs = ", ".join(
            "[" + ", ".join(dataio.format_number(v) for v in row) + "]" for row in rows
        )
        stdout.write(
            "{"
            f'"hf7_median": {dataio.format_number(result.hf7_median)}, '
            f'"kde_median": {dataio.format_number(result.kde_median)}, '
            f'"divergence": {dataio.format_number(result.median_divergence)}, '
            f'"curve": [{pairs}]'
            "}\n"
        )
    if args.figure:
        from . import plotting

        plotting.save_comparison_figure(result, args.figure)
    return EXIT_OK


def run(argv: Sequence[str], stdin=None, stdout=None, stderr=None) -> int:
    """Parse argv and execute one subcommand; returns the process exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "quantile":
            return _cmd_quantile(args, stdin, stdout)
        if args.command == "density":
            return _cmd_density(args, stdin, stdout, stderr)
        if args.command == "jitter":
            return _cmd_jitter(args, stdin, stdout)
        return _cmd_compare(args, stdin, stdout, stderr)
    except (ValueError, OSError) as exc:
        stderr.write(f"qrdehd: error: {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        stderr.write(f"qrdehd: numerical error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
