"""Command-line front end.

Subcommands mirror the scenario kinds: the three sweeps write one CSV each,
``single`` evaluates one channel realization and prints the optimum of every
strategy. Flags override the corresponding scenario-file values. The
``VFD_THREADS`` environment variable caps worker processes; results are
byte-identical for any worker count.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import sys

from .montecarlo import AggregateStats, run_point, run_sweep
from .optimizer import GridSpec, Strategy, grid_search
from .scenario import ScenarioError, ScenarioFile, load_scenario
from .channels import substream, draw_rayleigh_gains, draw_geometric_gains
from .channels import FadingSpec

__all__ = ["CSV_COLUMNS", "run_cli", "main"]

CSV_COLUMNS = (
    "sweep_param",
    "strategy",
    "mean_rate",
    "mean_c1",
    "mean_c2",
    "mean_tau",
    "realizations",
    "seed",
)

_SUBCOMMAND_KINDS = {
    "iri-sweep": "iri_sweep",
    "max-improper-sweep": "max_improper_sweep",
    "location-sweep": "location_sweep",
    "single": "single",
}


def _fmt(value: float) -> str:
    return format(float(value), ".9g")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vfdrelay",
        description="Two-path relaying rate simulator and optimizer",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in _SUBCOMMAND_KINDS:
        p = sub.add_parser(command)
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--seed", type=int, default=None, help="override the master seed")
        p.add_argument(
            "--realizations", type=int, default=None, help="override the realization count"
        )
        p.add_argument(
            "--grid-points",
            type=int,
            default=None,
            help="override both grid axes (must be odd)",
        )
        p.add_argument(
            "--strategies",
            default=None,
            help="comma-separated strategy names, overriding the file",
        )
        if command != "single":
            p.add_argument("--out", required=True, help="output CSV path")
    return parser


def _apply_overrides(scenario: ScenarioFile, args: argparse.Namespace) -> ScenarioFile:
    run = scenario.run
    if args.seed is not None:
        if not (0 <= args.seed < 2**64):
            raise ScenarioError("--seed must be a 64-bit unsigned integer")
        run = dataclasses.replace(run, seed=args.seed)
    if args.realizations is not None:
        if args.realizations < 1:
            raise ScenarioError("--realizations must be >= 1")
        run = dataclasses.replace(run, realizations=args.realizations)
    if args.grid_points is not None:
        try:
            run = dataclasses.replace(
                run, grid=GridSpec(args.grid_points, args.grid_points)
            )
        except ValueError as exc:
            raise ScenarioError(f"--grid-points: {exc}") from None
    if args.strategies is not None:
        names = [n.strip() for n in args.strategies.split(",") if n.strip()]
        if not names:
            raise ScenarioError("--strategies must name at least one strategy")
        try:
            strategies = tuple(Strategy.from_key(n) for n in names)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
        run = dataclasses.replace(run, strategies=strategies)
    return dataclasses.replace(scenario, run=run)


def _workers() -> int | None:
    raw = os.environ.get("VFD_THREADS")
    if raw is None:
        return os.cpu_count()
    try:
        workers = int(raw)
    except ValueError:
        raise ScenarioError(f"VFD_THREADS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ScenarioError("VFD_THREADS must be >= 1")
    return workers


def _write_csv(path: str, results: list[tuple[float, AggregateStats]], seed: int) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for value, stats in results:
            for name, s in stats.per_strategy.items():
                writer.writerow(
                    [
                        _fmt(value),
                        name,
                        _fmt(s.mean_rate),
                        _fmt(s.mean_c1),
                        _fmt(s.mean_c2),
                        _fmt(s.mean_tau),
                        str(stats.realizations),
                        str(seed),
                    ]
                )


def _run_single(scenario: ScenarioFile, out=None) -> None:
    out = sys.stdout if out is None else out
    run = scenario.run
    stream = substream(run.seed, 0)
    if isinstance(run.channel, FadingSpec):
        gains = draw_rayleigh_gains(run.channel, stream)
    else:
        gains = draw_geometric_gains(run.channel, stream)
    print(
        "gains:",
        " ".join(
            f"{name}={_fmt(getattr(gains, name))}"
            for name in ("h1_sq", "h2_sq", "g1_sq", "g2_sq", "f_sq")
        ),
        file=out,
    )
    for strategy in run.strategies:
        res = grid_search(strategy, run.grid, run.params, gains)
        b = res.breakdown
        print(f"strategy={strategy.key}", file=out)
        print(
            f"  best: c1={_fmt(res.best.c1)} c2={_fmt(res.best.c2)}"
            f" tau={_fmt(res.best.tau)} rate={_fmt(res.rate)}",
            file=out,
        )
        print(
            f"  hops: r11={_fmt(b.r11)} r12={_fmt(b.r12)}"
            f" r21={_fmt(b.r21)} r22={_fmt(b.r22)}",
            file=out,
        )
        print(
            f"  paths: path1={_fmt(b.path1)} path2={_fmt(b.path2)}"
            f" total={_fmt(b.total)}",
            file=out,
        )


def run_cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)

    try:
        scenario = load_scenario(args.config)
        expected = _SUBCOMMAND_KINDS[args.command]
        if scenario.kind != expected:
            raise ScenarioError(
                f"scenario kind '{scenario.kind}' does not match the"
                f" '{args.command}' subcommand (expected '{expected}')"
            )
        scenario = _apply_overrides(scenario, args)
        if scenario.kind == "single":
            _run_single(scenario)
        else:
            results = run_sweep(
                scenario.run,
                scenario.sweep_axis,
                scenario.sweep_values,
                workers=_workers(),
            )
            _write_csv(args.out, results, scenario.run.seed)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
