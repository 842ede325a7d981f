"""Monte-Carlo driver.

Runs N independent channel realizations, grid-searches each one under every
requested strategy (all strategies see the same gains, which keeps the
comparison paired), and aggregates average rates and average optimal
parameters. Accumulation is an exact ordered reduction over realization
indices, so the output is byte-identical regardless of worker count.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from .channels import (
    FadingSpec,
    GeometrySpec,
    derive_seed,
    draw_geometric_gains,
    draw_rayleigh_gains,
    substream,
)
from .optimizer import GridSpec, Strategy, grid_search
from .rates import LinkGains, SystemParams

__all__ = [
    "RunConfig",
    "StrategyStats",
    "AggregateStats",
    "SimulationError",
    "SWEEP_AXES",
    "run_point",
    "run_sweep",
]

SWEEP_AXES = ("mean_f_db", "d_sr2")


class SimulationError(RuntimeError):
    """A realization failed; the message carries the realization index."""


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one Monte-Carlo point."""

    params: SystemParams
    channel: FadingSpec | GeometrySpec
    strategies: tuple[Strategy, ...]
    grid: GridSpec = GridSpec()
    realizations: int = 10000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not self.strategies:
            raise ValueError("strategies must be non-empty")
        if not isinstance(self.channel, (FadingSpec, GeometrySpec)):
            raise TypeError("channel must be a FadingSpec or a GeometrySpec")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class StrategyStats:
    """Averages of one strategy over all realizations of a point."""

    mean_rate: float
    mean_c1: float
    mean_c2: float
    mean_tau: float
    count: int


@dataclass(frozen=True)
class AggregateStats:
    """Per-strategy averages of one Monte-Carlo point, keyed by strategy."""

    per_strategy: dict[str, StrategyStats]
    realizations: int


def _draw_gains(config: RunConfig, k: int) -> LinkGains:
    stream = substream(config.seed, k)
    if isinstance(config.channel, FadingSpec):
        return draw_rayleigh_gains(config.channel, stream)
    return draw_geometric_gains(config.channel, stream)


def _run_realization(config: RunConfig, k: int) -> tuple[tuple[float, float, float, float], ...]:
    try:
        gains = _draw_gains(config, k)
        out = []
        for strategy in config.strategies:
            res = grid_search(strategy, config.grid, config.params, gains)
            out.append((res.rate, res.best.c1, res.best.c2, res.best.tau))
        return tuple(out)
    except Exception as exc:
        raise SimulationError(f"realization {k}: {exc}") from exc


def run_point(config: RunConfig, workers: int | None = None) -> AggregateStats:
    """Simulate one point: N realizations, every strategy on each.

    ``workers`` > 1 evaluates realizations in a process pool; the reduction
    runs in realization order with compensated summation either way.
    """
    n = config.realizations
    task = partial(_run_realization, config)
    if workers is not None and workers > 1:
        chunk = max(1, n // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(task, range(n), chunksize=chunk))
    else:
        rows = [task(k) for k in range(n)]

    per_strategy: dict[str, StrategyStats] = {}
    for s_idx, strategy in enumerate(config.strategies):
        values = [row[s_idx] for row in rows]
        means = [math.fsum(v[j] for v in values) / n for j in range(4)]
        per_strategy[strategy.key] = StrategyStats(*means, count=n)
    return AggregateStats(per_strategy=per_strategy, realizations=n)


def run_sweep(
    base: RunConfig,
    axis: str,
    values,
    workers: int | None = None,
) -> list[tuple[float, AggregateStats]]:
    """One run_point per sweep value, with a fresh seed per point.

    ``axis`` selects the swept channel parameter: ``mean_f_db`` for a fading
    channel, ``d_sr2`` for a geometry channel. Values must be finite and
    strictly ascending.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    values = [float(v) for v in values]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("sweep values must be finite")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("sweep values must be strictly ascending")
    if axis == "mean_f_db" and not isinstance(base.channel, FadingSpec):
        raise ValueError("axis 'mean_f_db' requires a fading channel")
    if axis == "d_sr2" and not isinstance(base.channel, GeometrySpec):
        raise ValueError("axis 'd_sr2' requires a geometry channel")

    results = []
    for idx, value in enumerate(values):
        channel = dataclasses.replace(base.channel, **{axis: value})
        point = dataclasses.replace(
            base, channel=channel, seed=derive_seed(base.seed, idx)
        )
        results.append((value, run_point(point, workers=workers)))
    return results
