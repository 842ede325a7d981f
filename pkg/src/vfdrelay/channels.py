"""Random channel generation.

Two sources of realizations: Rayleigh block fading with dB-specified mean
power gains, and a relay-placement geometry model (path loss plus lognormal
shadowing plus Rayleigh fading) on the normalized source-destination axis.

Randomness is fully deterministic: every realization owns a stream derived
from a 64-bit master seed and the realization index, so results do not
depend on evaluation order or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import LinkGains

__all__ = [
    "FadingSpec",
    "GeometrySpec",
    "MeanGains",
    "db_to_linear",
    "substream",
    "derive_seed",
    "draw_rayleigh_gains",
    "geometry_to_mean_gains",
    "draw_geometric_gains",
]

_MAX_SEED = 2**64


@dataclass(frozen=True)
class FadingSpec:
    """Average power gains of the five links, in dB."""

    mean_h1_db: float
    mean_h2_db: float
    mean_g1_db: float
    mean_g2_db: float
    mean_f_db: float = 0.0

    def __post_init__(self) -> None:
        for name in ("mean_h1_db", "mean_h2_db", "mean_g1_db", "mean_g2_db", "mean_f_db"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class GeometrySpec:
    """Relay placement on the normalized source-destination axis.

    The source sits at (0, 0) and the destination at (1, 0). Relay 1 is
    fixed at horizontal midpoint, relay 2 at horizontal distance ``d_sr2``
    from the source; the relays sit on opposite sides of the axis at
    ``vertical_offset``, which keeps their separation positive everywhere.
    """

    d_sr2: float
    vertical_offset: float = 0.1
    pathloss_exp: float = 2.0
    shadowing_db: float = 5.0

    def __post_init__(self) -> None:
        if not (0.0 < self.d_sr2 < 1.0):
            raise ValueError(f"d_sr2 must lie in (0, 1), got {self.d_sr2!r}")
        if not (self.vertical_offset > 0 and math.isfinite(self.vertical_offset)):
            raise ValueError("vertical_offset must be > 0")
        if not (self.pathloss_exp > 0 and math.isfinite(self.pathloss_exp)):
            raise ValueError("pathloss_exp must be > 0")
        if not (self.shadowing_db >= 0 and math.isfinite(self.shadowing_db)):
            raise ValueError("shadowing_db must be >= 0")


@dataclass(frozen=True)
class MeanGains:
    """Linear mean power gains of the five links."""

    h1_sq: float
    h2_sq: float
    g1_sq: float
    g2_sq: float
    f_sq: float


def db_to_linear(x_db: float) -> float:
    """Convert a dB quantity to its linear value, 10^(x/10)."""
    if not math.isfinite(x_db):
        raise ValueError(f"dB value must be finite, got {x_db!r}")
    return float(10.0 ** (x_db / 10.0))


def _check_seed(seed: int) -> None:
    if not (0 <= seed < _MAX_SEED):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Deterministic random stream for one unit of work.

    The stream depends only on the master seed and the integer key path
    (typically the realization index), never on call order.
    """
    _check_seed(master_seed)
    seq = np.random.SeedSequence(master_seed, spawn_key=key)
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(master_seed: int, index: int) -> int:
    """Derive an independent 64-bit seed, e.g. one per sweep point."""
    _check_seed(master_seed)
    seq = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def draw_rayleigh_gains(spec: FadingSpec, stream: np.random.Generator) -> LinkGains:
    """Draw one block-fading realization from dB mean gains.

    Rayleigh amplitudes make each power gain exponentially distributed with
    the configured linear mean. Draw order is fixed: h1, h2, g1, g2, f.
    """
    means = np.array(
        [
            db_to_linear(spec.mean_h1_db),
            db_to_linear(spec.mean_h2_db),
            db_to_linear(spec.mean_g1_db),
            db_to_linear(spec.mean_g2_db),
            db_to_linear(spec.mean_f_db),
        ]
    )
    draws = stream.exponential(scale=means)
    return LinkGains(*(float(v) for v in draws))


def geometry_to_mean_gains(geo: GeometrySpec) -> MeanGains:
    """Mean power gains implied by node positions: distance^(-pathloss_exp).

    Distances are already normalized by the source-destination separation,
    so no reference-distance constant enters.
    """
    v = geo.vertical_offset
    nodes = {
        "s": (0.0, 0.0),
        "d": (1.0, 0.0),
        "r1": (0.5, v),
        "r2": (geo.d_sr2, -v),
    }

    def mean_gain(a: str, b: str) -> float:
        (ax, ay), (bx, by) = nodes[a], nodes[b]
        dist = math.hypot(ax - bx, ay - by)
        if dist == 0.0:
            raise ValueError(f"zero distance between {a} and {b}")
        return dist ** (-geo.pathloss_exp)

    return MeanGains(
        h1_sq=mean_gain("s", "r1"),
        h2_sq=mean_gain("s", "r2"),
        g1_sq=mean_gain("r1", "d"),
        g2_sq=mean_gain("r2", "d"),
        f_sq=mean_gain("r1", "r2"),
    )


def draw_geometric_gains(
    geo: GeometrySpec,
    stream: np.random.Generator,
    include_fading: bool = True,
) -> LinkGains:
    """Draw one realization from the placement model.

    Per link: geometric mean gain, times a lognormal shadowing factor
    (zero-mean normal in dB with std ``shadowing_db``), times a unit-mean
    exponential fading factor. ``include_fading=False`` replaces the fading
    factor by its mean, a deterministic hook for tests.
    """
    m = geometry_to_mean_gains(geo)
    means = np.array([m.h1_sq, m.h2_sq, m.g1_sq, m.g2_sq, m.f_sq])
    shadow_db = stream.normal(0.0, geo.shadowing_db, size=5)
    factors = 10.0 ** (shadow_db / 10.0)
    if include_fading:
        factors = factors * stream.exponential(1.0, size=5)
    return LinkGains(*(float(v) for v in means * factors))
