"""Render static figures from vfdrelay sweep CSVs.

These functions are pure CSV viewers: they never recompute rates, so the
figures cannot drift from the simulator's numbers. Input files must carry
the sweep schema columns (sweep_param, strategy, mean_rate, mean_c1,
mean_c2, mean_tau, ...); anything else is rejected before an output file is
created.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

__all__ = ["PlotDataError", "plot_rates", "plot_params"]

_RATE_COLUMNS = ("sweep_param", "strategy", "mean_rate")
_PARAM_COLUMNS = ("sweep_param", "strategy", "mean_c1", "mean_c2", "mean_tau")


class PlotDataError(ValueError):
    """The input CSV is missing, malformed or empty."""


def _load(csv_in, required: tuple[str, ...]) -> pd.DataFrame:
    try:
        df = pd.read_csv(csv_in)
    except FileNotFoundError:
        raise PlotDataError(f"{csv_in}: no such file") from None
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as exc:
        raise PlotDataError(f"{csv_in}: not a readable CSV ({exc})") from None
    missing = [c for c in required if c not in df.columns]
    if missing:
        raise PlotDataError(f"{csv_in}: missing column(s) {', '.join(missing)}")
    if df.empty:
        raise PlotDataError(f"{csv_in}: no data rows")
    numeric = [c for c in required if c != "strategy"]
    try:
        df[numeric] = df[numeric].apply(pd.to_numeric)
    except (ValueError, TypeError) as exc:
        raise PlotDataError(f"{csv_in}: non-numeric data ({exc})") from None
    return df


def plot_rates(csv_in, png_out) -> list[str]:
    """One mean-rate curve per strategy versus the sweep parameter.

    Returns the strategies plotted, in file order.
    """
    df = _load(csv_in, _RATE_COLUMNS)
    strategies = list(dict.fromkeys(df["strategy"]))
    fig, ax = plt.subplots(figsize=(7, 5))
    for name in strategies:
        sub = df[df["strategy"] == name]
        ax.plot(sub["sweep_param"], sub["mean_rate"], marker="o", label=name)
    ax.set_xlabel("sweep parameter")
    ax.set_ylabel("mean achievable rate (bits/s/Hz)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_out, dpi=150)
    plt.close(fig)
    return strategies


def plot_params(csv_in, png_out) -> list[str]:
    """Average optimal parameters (c1, c2, tau) per strategy, one panel each.

    Returns the strategies plotted, in file order.
    """
    df = _load(csv_in, _PARAM_COLUMNS)
    strategies = list(dict.fromkeys(df["strategy"]))
    fig, axes = plt.subplots(3, 1, figsize=(7, 9), sharex=True)
    for ax, column, label in zip(
        axes,
        ("mean_c1", "mean_c2", "mean_tau"),
        ("mean optimal c1", "mean optimal c2", "mean optimal tau"),
    ):
        for name in strategies:
            sub = df[df["strategy"] == name]
            ax.plot(sub["sweep_param"], sub[column], marker="o", label=name)
        ax.set_ylabel(label)
        ax.set_ylim(-0.05, 1.05)
        ax.grid(True, alpha=0.4)
    axes[-1].set_xlabel("sweep parameter")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(png_out, dpi=150)
    plt.close(fig)
    return strategies
