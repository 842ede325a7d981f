"""Console entry points: plot-rates <csv> <png>, plot-params <csv> <png>."""

from __future__ import annotations

import argparse
import sys

from .plotting import PlotDataError, plot_params, plot_rates


def _run(plot_fn, prog: str, description: str, argv) -> int:
    parser = argparse.ArgumentParser(prog=prog, description=description)
    parser.add_argument("csv_in", help="sweep CSV written by vfdrelay")
    parser.add_argument("png_out", help="output PNG path")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        strategies = plot_fn(args.csv_in, args.png_out)
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.png_out} ({len(strategies)} strategies)")
    return 0


def rates_main(argv=None) -> int:
    code = _run(
        plot_rates,
        "plot-rates",
        "Plot mean achievable rates per strategy from a sweep CSV",
        sys.argv[1:] if argv is None else argv,
    )
    if argv is None:
        sys.exit(code)
    return code


def params_main(argv=None) -> int:
    code = _run(
        plot_params,
        "plot-params",
        "Plot average optimal parameters per strategy from a sweep CSV",
        sys.argv[1:] if argv is None else argv,
    )
    if argv is None:
        sys.exit(code)
    return code
