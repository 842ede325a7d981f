"""Achievable-rate formulas for two-path (alternate) relaying with improper
Gaussian relay signals.

A source talks to a destination through two half-duplex relays that swap
transmit/receive roles every slot, so the relay receiving from the source is
interfered by the relay currently transmitting (inter-relay interference).
Each relay may transmit an improper Gaussian signal whose asymmetry is set by
a circularity coefficient in [0, 1]; odd slots last a fraction ``tau`` of the
frame and even slots the remaining ``1 - tau``.

All rates are in bits/s/Hz, all powers and variances in linear units.
Channels enter only through instantaneous power gains. The circularity and
time-sharing arguments may be numpy arrays, in which case the formulas
broadcast elementwise; the grid optimizer relies on this, and on every code
path funnelling through the same kernels so that equal inputs give equal
bits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SystemParams",
    "LinkGains",
    "SignalConfig",
    "RateBreakdown",
    "HopBranch",
    "improper_link_rate",
    "first_hop_rate",
    "second_hop_rate",
    "path_rate",
    "total_rate",
    "psi_coeffs",
    "psi",
    "piecewise_path_min",
]


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Transmit powers and noise variance shared by all rate formulas.

    ``p_max`` is the power budget; construction fails if either transmit
    power exceeds it.
    """

    p_s: float = 1.0
    p_r: float = 1.0
    sigma_n2: float = 1.0
    p_max: float = 1.0

    def __post_init__(self) -> None:
        for name in ("p_s", "p_r", "sigma_n2", "p_max"):
            _require_finite(name, getattr(self, name))
        if self.p_s < 0 or self.p_r < 0:
            raise ValueError("transmit powers must be >= 0")
        if self.sigma_n2 <= 0:
            raise ValueError("sigma_n2 must be > 0")
        if self.p_s > self.p_max or self.p_r > self.p_max:
            raise ValueError(
                f"transmit powers (p_s={self.p_s}, p_r={self.p_r}) exceed "
                f"the power budget p_max={self.p_max}"
            )


@dataclass(frozen=True)
class LinkGains:
    """Instantaneous power gains of one channel realization.

    ``h*_sq`` are the source-to-relay links, ``g*_sq`` the relay-to-
    destination links and ``f_sq`` the reciprocal inter-relay link. Rates
    depend on the channels only through these squared magnitudes.
    """

    h1_sq: float
    h2_sq: float
    g1_sq: float
    g2_sq: float
    f_sq: float

    def __post_init__(self) -> None:
        for name in ("h1_sq", "h2_sq", "g1_sq", "g2_sq", "f_sq"):
            value = getattr(self, name)
            _require_finite(name, value)
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class SignalConfig:
    """The design triple: relay circularity coefficients and time sharing."""

    c1: float
    c2: float
    tau: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if not (0.0 <= self.tau <= 1.0):
            raise ValueError(f"tau must lie in [0, 1], got {self.tau!r}")


@dataclass(frozen=True)
class RateBreakdown:
    """Hop, path and end-to-end rates of one evaluated configuration.

    ``r<i><k>`` is hop ``k`` of path ``i`` (1 = source to relay,
    2 = relay to destination); ``path1``/``path2`` already carry the slot
    duration weights and ``total`` is their sum.
    """

    r11: float
    r12: float
    r21: float
    r22: float
    path1: float
    path2: float
    total: float


class HopBranch(enum.Enum):
    """Which hop limits a path at equal time sharing."""

    FIRST_HOP_LIMITED = "first_hop_limited"
    SECOND_HOP_LIMITED = "second_hop_limited"


def _check_path_index(i: int) -> None:
    if i not in (1, 2):
        raise ValueError(f"path index must be 1 or 2, got {i!r}")


def _check_circularity(c, name: str = "circularity") -> None:
    arr = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")


# ---------------------------------------------------------------------------
# shared kernels (array-compatible, single source of truth for every rate)
# ---------------------------------------------------------------------------


def _first_hop_arg(h_sq, c_other, params: SystemParams, f_sq):
    """Pre-log argument of the source-to-relay hop rate."""
    s2 = params.sigma_n2
    pr_f = params.p_r * f_sq
    num = 2.0 * params.p_s * h_sq * (pr_f + s2) + (params.p_s * h_sq) ** 2
    den = (1.0 - c_other * c_other) * pr_f * pr_f + 2.0 * pr_f * s2 + s2 * s2
    return 1.0 + num / den


def _second_hop_arg(g_sq, c_own, params: SystemParams):
    """Pre-log argument of the relay-to-destination hop rate."""
    s2 = params.sigma_n2
    pr_g = params.p_r * g_sq
    return 1.0 + 2.0 * pr_g / s2 + pr_g * pr_g * (1.0 - c_own * c_own) / (s2 * s2)


def _components(c1, c2, tau, params: SystemParams, gains: LinkGains):
    """All four hop rates, both weighted path rates and the total.

    Relay 1 receives and relay 2 transmits in odd slots (duration ``tau``),
    roles swap in even slots. Each hop is therefore weighted by the duration
    of the slot it occupies, and the interferer seen by a receiving relay is
    always the other relay's signal.
    """
    r11 = 0.5 * np.log2(_first_hop_arg(gains.h1_sq, c2, params, gains.f_sq))
    r12 = 0.5 * np.log2(_second_hop_arg(gains.g1_sq, c1, params))
    r21 = 0.5 * np.log2(_first_hop_arg(gains.h2_sq, c1, params, gains.f_sq))
    r22 = 0.5 * np.log2(_second_hop_arg(gains.g2_sq, c2, params))
    path1 = np.minimum(tau * r11, (1.0 - tau) * r12)
    path2 = np.minimum((1.0 - tau) * r21, tau * r22)
    return r11, r12, r21, r22, path1, path2, path1 + path2


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def improper_link_rate(
    sigma_y2: float, pseudo_y: float, sigma_z2: float, pseudo_z: float
) -> float:
    """Rate of a single link from second-order statistics.

    ``sigma_y2``/``pseudo_y`` are the variance of the received signal and the
    magnitude of its pseudo-variance; ``sigma_z2``/``pseudo_z`` the same for
    the interference-plus-noise. A pseudo-variance magnitude at or above the
    corresponding variance is rejected. Negative values (noise statistics
    dominating the signal's) clamp to zero.
    """
    if sigma_y2 <= 0 or sigma_z2 <= 0:
        raise ValueError("variances must be > 0")
    if pseudo_y < 0 or pseudo_z < 0:
        raise ValueError("pseudo-variance magnitudes must be >= 0")
    num = sigma_y2 * sigma_y2 - pseudo_y * pseudo_y
    den = sigma_z2 * sigma_z2 - pseudo_z * pseudo_z
    if num <= 0 or den <= 0:
        raise ValueError(
            "pseudo-variance magnitude must be strictly below the variance"
        )
    return float(max(0.0, 0.5 * np.log2(num / den)))


def first_hop_rate(
    i: int, c_interferer, params: SystemParams, gains: LinkGains
) -> float:
    """Rate of the source-to-relay hop of path ``i``.

    ``c_interferer`` is the circularity coefficient of the *other* relay,
    whose transmission is the interference seen here. Nondecreasing in
    ``c_interferer``.
    """
    _check_path_index(i)
    _check_circularity(c_interferer, "c_interferer")
    h_sq = gains.h1_sq if i == 1 else gains.h2_sq
    return float(0.5 * np.log2(_first_hop_arg(h_sq, c_interferer, params, gains.f_sq)))


def second_hop_rate(i: int, c_own, params: SystemParams, gains: LinkGains) -> float:
    """Rate of the relay-to-destination hop of path ``i``.

    ``c_own`` is the transmitting relay's own circularity coefficient.
    Nonincreasing in ``c_own``.
    """
    _check_path_index(i)
    _check_circularity(c_own, "c_own")
    g_sq = gains.g1_sq if i == 1 else gains.g2_sq
    return float(0.5 * np.log2(_second_hop_arg(g_sq, c_own, params)))


def path_rate(
    i: int, config: SignalConfig, params: SystemParams, gains: LinkGains
) -> float:
    """Effective rate of path ``i``: the minimum of its duration-weighted hops."""
    _check_path_index(i)
    parts = _components(config.c1, config.c2, config.tau, params, gains)
    return float(parts[3 + i])


def total_rate(
    config: SignalConfig, params: SystemParams, gains: LinkGains
) -> RateBreakdown:
    """End-to-end rate of the two-path system, with all intermediate terms."""
    parts = _components(config.c1, config.c2, config.tau, params, gains)
    return RateBreakdown(*(float(v) for v in parts))


def psi_coeffs(
    i: int, params: SystemParams, gains: LinkGains
) -> tuple[float, float, float]:
    """Coefficients (alpha, beta, gamma) of the circularity threshold of
    path ``i`` used by the equal-time-sharing branch selection."""
    _check_path_index(i)
    h_sq = gains.h1_sq if i == 1 else gains.h2_sq
    g_sq = gains.g1_sq if i == 1 else gains.g2_sq
    s2 = params.sigma_n2
    f_sq = gains.f_sq
    alpha = 2.0 * params.p_r**3 * g_sq * f_sq * f_sq / s2
    beta = params.p_r * g_sq * (2.0 * params.p_r * f_sq + s2)
    gamma = (
        2.0 * params.p_s * h_sq * (params.p_r * f_sq + s2)
        + (params.p_s * h_sq) ** 2
        - 2.0 * beta
    )
    return float(alpha), float(beta), float(gamma)


def psi(x: float, i: int, params: SystemParams, gains: LinkGains) -> float:
    """Threshold function of path ``i`` evaluated at ``x``.

    May fall outside [0, 1]; callers interpret out-of-range values through
    the endpoint comparisons. Undefined when the relay-to-destination link
    of path ``i`` carries no power.
    """
    alpha, beta, gamma = psi_coeffs(i, params, gains)
    g_sq = gains.g1_sq if i == 1 else gains.g2_sq
    pr_g = params.p_r * g_sq
    if pr_g == 0.0:
        raise ValueError("threshold undefined: p_r * |g_i|^2 must be > 0")
    return float((params.sigma_n2 / pr_g) * (gamma - alpha * x) / (beta + alpha * x))


def piecewise_path_min(
    i: int, c_i: float, c_j: float, params: SystemParams, gains: LinkGains
) -> tuple[float, HopBranch]:
    """Equal-time-sharing bottleneck rate of path ``i`` with its limiting hop.

    ``c_i`` is the own circularity of relay ``i`` (second hop), ``c_j`` the
    interferer's (first hop). The limiting hop is decided from endpoint
    comparisons of the two hop rates and, when those are inconclusive, from a
    circularity threshold; only the selected hop's logarithm is evaluated.
    The returned rate equals ``min(first_hop_rate, second_hop_rate)`` up to
    floating round-off. Slot-duration weights are not applied here.
    """
    _check_path_index(i)
    _check_circularity(c_i, "c_i")
    _check_circularity(c_j, "c_j")
    h_sq = gains.h1_sq if i == 1 else gains.h2_sq
    g_sq = gains.g1_sq if i == 1 else gains.g2_sq
    f_sq = gains.f_sq
    pr_g = params.p_r * g_sq
    if pr_g == 0.0:
        # second hop carries no power, so it is the bottleneck at rate 0
        r1 = first_hop_rate(i, c_j, params, gains)
        r2 = second_hop_rate(i, c_i, params, gains)
        if r2 <= r1:
            return r2, HopBranch.SECOND_HOP_LIMITED
        return r1, HopBranch.FIRST_HOP_LIMITED

    # comparisons happen on the pre-log arguments; log2 is monotonic
    first_best = _first_hop_arg(h_sq, 1.0, params, f_sq)
    second_worst = _second_hop_arg(g_sq, 1.0, params)
    if first_best <= second_worst:
        rate = 0.5 * np.log2(_first_hop_arg(h_sq, c_j, params, f_sq))
        return float(rate), HopBranch.FIRST_HOP_LIMITED

    second_best = _second_hop_arg(g_sq, 0.0, params)
    first_worst = _first_hop_arg(h_sq, 0.0, params, f_sq)
    if second_best <= first_worst:
        rate = 0.5 * np.log2(_second_hop_arg(g_sq, c_i, params))
        return float(rate), HopBranch.SECOND_HOP_LIMITED

    # hop ranges overlap: the hops cross at 1 - c_i^2 equal to the value
    # below (note the halved alpha*x term; with a full alpha*x the threshold
    # drifts off the true crossing)
    alpha, beta, gamma = psi_coeffs(i, params, gains)
    x = 1.0 - c_j * c_j
    crossing = (params.sigma_n2 / pr_g) * (gamma - alpha * x) / (beta + 0.5 * alpha * x)
    threshold = math.sqrt(min(max(1.0 - crossing, 0.0), 1.0))
    if c_i <= threshold:
        rate = 0.5 * np.log2(_first_hop_arg(h_sq, c_j, params, f_sq))
        return float(rate), HopBranch.FIRST_HOP_LIMITED
    rate = 0.5 * np.log2(_second_hop_arg(g_sq, c_i, params))
    return float(rate), HopBranch.SECOND_HOP_LIMITED
