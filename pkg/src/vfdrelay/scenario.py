"""Scenario files.

A scenario is one JSON document describing an experiment: which sweep to
run (or a single realization), the channel model, powers, grid resolution,
strategies, seed and realization count. Unknown fields are rejected by
name so typos cannot silently change an experiment. See
docs/scenario_schema.md for the full schema.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .channels import FadingSpec, GeometrySpec
from .montecarlo import RunConfig
from .optimizer import STRATEGIES, GridSpec, Strategy
from .rates import SystemParams

__all__ = ["ScenarioError", "ScenarioFile", "KINDS", "load_scenario", "parse_scenario"]

KINDS = ("iri_sweep", "max_improper_sweep", "location_sweep", "single")

_DEFAULT_STRATEGIES = {
    "iri_sweep": tuple(STRATEGIES),
    "max_improper_sweep": ("proper_eq", "proper_opt", "maximp_eq", "maximp_opt"),
    "location_sweep": tuple(STRATEGIES),
    "single": tuple(STRATEGIES),
}
_DEFAULT_SWEEPS = {
    "iri_sweep": tuple(float(v) for v in range(-10, 40, 5)),
    "max_improper_sweep": tuple(float(v) for v in range(-10, 40, 5)),
    "location_sweep": tuple(round(0.1 * k, 1) for k in range(1, 10)),
}
_FADING_FIELDS = ("mean_h1_db", "mean_h2_db", "mean_g1_db", "mean_g2_db", "mean_f_db")
_GEOMETRY_FIELDS = ("vertical_offset", "pathloss_exp", "shadowing_db")
_PARAM_FIELDS = ("p_s", "p_r", "p_max", "sigma_n2")


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class ScenarioFile:
    """A validated scenario with defaults applied."""

    kind: str
    run: RunConfig
    sweep_axis: str | None
    sweep_values: tuple[float, ...]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioError(f"{path}: must be finite")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{path}: expected an integer, got {value!r}")
    return value


def _mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(f"{path}: expected an object")
    return dict(value)


def _reject_unknown(leftover: dict, path: str) -> None:
    if leftover:
        name = sorted(leftover)[0]
        where = f"{path}.{name}" if path else name
        raise ScenarioError(f"unknown field '{where}'")


def _parse_params(doc: dict) -> SystemParams:
    fields = {}
    for name in _PARAM_FIELDS:
        if name in doc:
            fields[name] = _number(doc.pop(name), f"params.{name}")
    _reject_unknown(doc, "params")
    try:
        return SystemParams(**fields)
    except ValueError as exc:
        raise ScenarioError(f"params: {exc}") from None


def _parse_grid(doc: dict) -> GridSpec:
    fields = {}
    for name in ("circ_points", "tau_points"):
        if name in doc:
            fields[name] = _integer(doc.pop(name), f"grid.{name}")
    _reject_unknown(doc, "grid")
    try:
        return GridSpec(**fields)
    except ValueError as exc:
        raise ScenarioError(f"grid: {exc}") from None


def _parse_strategies(value, kind: str) -> tuple[Strategy, ...]:
    if value is None:
        names = _DEFAULT_STRATEGIES[kind]
    else:
        if not isinstance(value, list) or not value:
            raise ScenarioError("strategies: expected a non-empty list of names")
        names = value
    out = []
    for name in names:
        if not isinstance(name, str):
            raise ScenarioError(f"strategies: expected a name, got {name!r}")
        try:
            strategy = Strategy.from_key(name)
        except ValueError as exc:
            raise ScenarioError(f"strategies: {exc}") from None
        if strategy in out:
            raise ScenarioError(f"strategies: duplicate entry '{name}'")
        out.append(strategy)
    return tuple(out)


def _parse_fading(doc: dict, require_f: bool) -> FadingSpec:
    fields = {}
    for name in _FADING_FIELDS:
        if name in doc:
            fields[name] = _number(doc.pop(name), f"fading.{name}")
    _reject_unknown(doc, "fading")
    required = _FADING_FIELDS if require_f else _FADING_FIELDS[:4]
    missing = [name for name in required if name not in fields]
    if missing:
        raise ScenarioError(f"fading: missing field '{missing[0]}'")
    try:
        return FadingSpec(**fields)
    except ValueError as exc:
        raise ScenarioError(f"fading: {exc}") from None


def _parse_geometry(doc: dict, require_d: bool) -> GeometrySpec:
    fields = {}
    for name in _GEOMETRY_FIELDS:
        if name in doc:
            fields[name] = _number(doc.pop(name), f"geometry.{name}")
    if "d_sr2" in doc:
        if not require_d:
            raise ScenarioError(
                "geometry.d_sr2 is set by the sweep values; remove it from the file"
            )
        fields["d_sr2"] = _number(doc.pop("d_sr2"), "geometry.d_sr2")
    elif require_d:
        raise ScenarioError("geometry: missing field 'd_sr2'")
    else:
        fields["d_sr2"] = 0.5  # placeholder, replaced per sweep point
    _reject_unknown(doc, "geometry")
    try:
        return GeometrySpec(**fields)
    except ValueError as exc:
        raise ScenarioError(f"geometry: {exc}") from None


def _parse_sweep_values(value, kind: str) -> tuple[float, ...]:
    if value is None:
        return _DEFAULT_SWEEPS[kind]
    if not isinstance(value, list) or not value:
        raise ScenarioError("sweep_values: expected a non-empty list of numbers")
    values = [_number(v, f"sweep_values[{i}]") for i, v in enumerate(value)]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ScenarioError("sweep_values: must be strictly ascending")
    return tuple(values)


def parse_scenario(doc) -> ScenarioFile:
    """Validate a decoded JSON document and apply defaults."""
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    d = dict(doc)

    kind = d.pop("kind", None)
    if kind not in KINDS:
        raise ScenarioError(f"kind: expected one of {KINDS}, got {kind!r}")

    seed = _integer(d.pop("seed", 0), "seed")
    if not (0 <= seed < 2**64):
        raise ScenarioError("seed: must be a 64-bit unsigned integer")
    realizations = _integer(d.pop("realizations", 10000), "realizations")
    if realizations < 1:
        raise ScenarioError("realizations: must be >= 1")

    strategies = _parse_strategies(d.pop("strategies", None), kind)
    grid = _parse_grid(_mapping(d.pop("grid", {}), "grid"))
    params = _parse_params(_mapping(d.pop("params", {}), "params"))

    fading_doc = d.pop("fading", None)
    geometry_doc = d.pop("geometry", None)
    raw_sweep = d.pop("sweep_values", None)
    _reject_unknown(d, "")

    if kind in ("iri_sweep", "max_improper_sweep"):
        if geometry_doc is not None:
            raise ScenarioError(f"geometry: not allowed for kind '{kind}'")
        if fading_doc is None:
            raise ScenarioError("fading: required for interference sweeps")
        channel = _parse_fading(_mapping(fading_doc, "fading"), require_f=False)
        axis = "mean_f_db"
        sweep_values = _parse_sweep_values(raw_sweep, kind)
    elif kind == "location_sweep":
        if fading_doc is not None:
            raise ScenarioError("fading: not allowed for kind 'location_sweep'")
        geometry_doc = {} if geometry_doc is None else geometry_doc
        channel = _parse_geometry(_mapping(geometry_doc, "geometry"), require_d=False)
        axis = "d_sr2"
        sweep_values = _parse_sweep_values(raw_sweep, kind)
        if any(not (0.0 < v < 1.0) for v in sweep_values):
            raise ScenarioError("sweep_values: relay distances must lie in (0, 1)")
    else:  # single
        if raw_sweep is not None:
            raise ScenarioError("sweep_values: not allowed for kind 'single'")
        if (fading_doc is None) == (geometry_doc is None):
            raise ScenarioError("single: exactly one of 'fading' or 'geometry' required")
        if fading_doc is not None:
            channel = _parse_fading(_mapping(fading_doc, "fading"), require_f=True)
        else:
            channel = _parse_geometry(_mapping(geometry_doc, "geometry"), require_d=True)
        axis = None
        sweep_values = ()

    run = RunConfig(
        params=params,
        channel=channel,
        strategies=strategies,
        grid=grid,
        realizations=realizations,
        seed=seed,
    )
    return ScenarioFile(kind=kind, run=run, sweep_axis=axis, sweep_values=sweep_values)


def load_scenario(path) -> ScenarioFile:
    """Read and validate a scenario file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON ({exc})") from None
    return parse_scenario(doc)
