"""Grid search over the design triple (c1, c2, tau).

A strategy fixes which combinations are admissible: the circularity mode
constrains the relay coefficients and the time-sharing mode either pins
tau at 0.5 or scans it. Candidate grids always contain their endpoints, and
the tau grid always contains 0.5 exactly, so the candidate set of a looser
strategy is a superset of a stricter one and the best rate can only grow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rates import LinkGains, RateBreakdown, SignalConfig, SystemParams, _components, total_rate

__all__ = [
    "CircularityMode",
    "TauMode",
    "Strategy",
    "STRATEGIES",
    "GridSpec",
    "OptResult",
    "candidate_grid",
    "grid_search",
]


class CircularityMode(enum.Enum):
    PROPER = "proper"
    SHARED = "shared"
    DISTINCT = "distinct"
    MAX_IMPROPER = "maximp"


class TauMode(enum.Enum):
    EQUAL_FIXED = "eq"
    OPTIMIZED = "opt"


@dataclass(frozen=True)
class Strategy:
    """One constraint set of the rate-maximization problem."""

    circularity_mode: CircularityMode
    tau_mode: TauMode

    @property
    def key(self) -> str:
        return f"{self.circularity_mode.value}_{self.tau_mode.value}"

    @classmethod
    def from_key(cls, key: str) -> "Strategy":
        try:
            return STRATEGIES[key]
        except KeyError:
            valid = ", ".join(STRATEGIES)
            raise ValueError(f"unknown strategy {key!r}; expected one of: {valid}") from None


STRATEGIES: dict[str, Strategy] = {
    s.key: s
    for s in (
        Strategy(cm, tm)
        for cm in CircularityMode
        for tm in TauMode
    )
}


@dataclass(frozen=True)
class GridSpec:
    """Samples per search axis; endpoints 0 and 1 are always included.

    ``tau_points`` must be odd so the tau grid contains 0.5 exactly, which
    makes the equal-time-sharing candidate a member of every optimized-tau
    candidate set.
    """

    circ_points: int = 51
    tau_points: int = 51

    def __post_init__(self) -> None:
        if self.circ_points < 2:
            raise ValueError("circ_points must be >= 2")
        if self.tau_points < 2:
            raise ValueError("tau_points must be >= 2")
        if self.tau_points % 2 == 0:
            raise ValueError("tau_points must be odd so the tau grid contains 0.5")


@dataclass(frozen=True)
class OptResult:
    """Maximizing configuration of one grid search."""

    best: SignalConfig
    rate: float
    breakdown: RateBreakdown


def _circ_axis(grid: GridSpec) -> np.ndarray:
    return np.linspace(0.0, 1.0, grid.circ_points)


def _tau_axis(grid: GridSpec) -> np.ndarray:
    axis = np.linspace(0.0, 1.0, grid.tau_points)
    axis[(grid.tau_points - 1) // 2] = 0.5  # must be exact, not a rounded multiple
    return axis


@lru_cache(maxsize=64)
def _candidate_arrays(
    strategy: Strategy, grid: GridSpec
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Candidate (c1, c2, tau) arrays in lexicographic order (c1, c2, tau)."""
    mode = strategy.circularity_mode
    if mode is CircularityMode.PROPER:
        pair_c1 = np.array([0.0])
        pair_c2 = np.array([0.0])
    elif mode is CircularityMode.SHARED:
        axis = _circ_axis(grid)
        pair_c1 = axis
        pair_c2 = axis
    elif mode is CircularityMode.DISTINCT:
        axis = _circ_axis(grid)
        pair_c1 = np.repeat(axis, axis.size)
        pair_c2 = np.tile(axis, axis.size)
    else:  # both relays transmit maximally improper signals
        pair_c1 = np.array([1.0])
        pair_c2 = np.array([1.0])

    if strategy.tau_mode is TauMode.EQUAL_FIXED:
        taus = np.array([0.5])
    else:
        taus = _tau_axis(grid)

    c1 = np.repeat(pair_c1, taus.size)
    c2 = np.repeat(pair_c2, taus.size)
    tau = np.tile(taus, pair_c1.size)
    for arr in (c1, c2, tau):
        arr.flags.writeable = False  # cached and shared between callers
    return c1, c2, tau


def candidate_grid(strategy: Strategy, grid: GridSpec = GridSpec()) -> list[SignalConfig]:
    """The ordered candidate sequence a grid search scans."""
    c1, c2, tau = _candidate_arrays(strategy, grid)
    return [
        SignalConfig(float(a), float(b), float(t))
        for a, b, t in zip(c1, c2, tau)
    ]


def grid_search(
    strategy: Strategy,
    grid: GridSpec,
    params: SystemParams,
    gains: LinkGains,
) -> OptResult:
    """Maximize the end-to-end rate over the strategy's candidate grid.

    Ties break toward the first candidate in lexicographic order, which
    biases reported optima toward smaller coefficients when the rate
    surface is flat.
    """
    c1, c2, tau = _candidate_arrays(strategy, grid)
    totals = _components(c1, c2, tau, params, gains)[6]
    idx = int(np.argmax(totals))  # argmax returns the first maximum
    best = SignalConfig(float(c1[idx]), float(c2[idx]), float(tau[idx]))
    breakdown = total_rate(best, params, gains)
    return OptResult(best=best, rate=breakdown.total, breakdown=breakdown)
