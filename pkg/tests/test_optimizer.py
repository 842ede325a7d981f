"""Tests for the strategy grids and the grid search."""

import numpy as np
import pytest

from vfdrelay.optimizer import (
    STRATEGIES,
    GridSpec,
    Strategy,
    candidate_grid,
    grid_search,
)
from vfdrelay.rates import LinkGains, SignalConfig, SystemParams, total_rate

UNIT = SystemParams()
SMALL = GridSpec(circ_points=11, tau_points=11)


def random_gains(rng):
    return LinkGains(*(10 ** rng.uniform(-2, 3, size=5)))


def brute_force_best(strategy_key, grid, params, gains):
    """Independent enumeration: scalar evaluation of every candidate with a
    strict-improvement argmax, which reproduces first-occurrence tie-breaking."""
    circ = list(np.linspace(0.0, 1.0, grid.circ_points))
    tau_axis = list(np.linspace(0.0, 1.0, grid.tau_points))
    tau_axis[(grid.tau_points - 1) // 2] = 0.5
    if strategy_key.startswith("proper"):
        pairs = [(0.0, 0.0)]
    elif strategy_key.startswith("shared"):
        pairs = [(c, c) for c in circ]
    elif strategy_key.startswith("distinct"):
        pairs = [(a, b) for a in circ for b in circ]
    else:
        pairs = [(1.0, 1.0)]
    taus = [0.5] if strategy_key.endswith("_eq") else tau_axis

    best_cfg, best_rate = None, -1.0
    for c1, c2 in pairs:
        for tau in taus:
            cfg = SignalConfig(float(c1), float(c2), float(tau))
            rate = total_rate(cfg, params, gains).total
            if rate > best_rate:
                best_cfg, best_rate = cfg, rate
    return best_cfg, best_rate


class TestStrategyRegistry:
    def test_all_eight_strategies_exist(self):
        assert list(STRATEGIES) == [
            "proper_eq",
            "proper_opt",
            "shared_eq",
            "shared_opt",
            "distinct_eq",
            "distinct_opt",
            "maximp_eq",
            "maximp_opt",
        ]

    def test_key_round_trip(self):
        for key, strategy in STRATEGIES.items():
            assert strategy.key == key
            assert Strategy.from_key(key) is strategy

    def test_unknown_key(self):
        with pytest.raises(ValueError, match="unknown strategy"):
            Strategy.from_key("improper_whatever")


class TestGridSpec:
    def test_defaults(self):
        grid = GridSpec()
        assert (grid.circ_points, grid.tau_points) == (51, 51)

    def test_even_tau_points_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            GridSpec(tau_points=10)

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError):
            GridSpec(circ_points=1)
        with pytest.raises(ValueError):
            GridSpec(tau_points=1)


class TestCandidateGrid:
    def test_proper_equal_is_a_single_candidate(self):
        cands = candidate_grid(STRATEGIES["proper_eq"], SMALL)
        assert cands == [SignalConfig(0.0, 0.0, 0.5)]

    def test_max_improper_pins_both_relays_fully_improper(self):
        cands = candidate_grid(STRATEGIES["maximp_eq"], SMALL)
        assert cands == [SignalConfig(1.0, 1.0, 0.5)]
        opt = candidate_grid(STRATEGIES["maximp_opt"], SMALL)
        assert len(opt) == SMALL.tau_points
        assert all(c.c1 == 1.0 and c.c2 == 1.0 for c in opt)

    def test_counts(self):
        assert len(candidate_grid(STRATEGIES["shared_eq"], SMALL)) == 11
        assert len(candidate_grid(STRATEGIES["shared_opt"], SMALL)) == 121
        assert len(candidate_grid(STRATEGIES["distinct_eq"], SMALL)) == 121
        assert len(candidate_grid(STRATEGIES["distinct_opt"], SMALL)) == 11**3
        assert len(candidate_grid(STRATEGIES["distinct_opt"], GridSpec())) == 51**3

    def test_lexicographic_ordering(self):
        for key in ("distinct_opt", "shared_opt", "maximp_opt"):
            cands = candidate_grid(STRATEGIES[key], GridSpec(5, 5))
            keys = [(c.c1, c.c2, c.tau) for c in cands]
            assert keys == sorted(keys)

    def test_axes_contain_required_points(self):
        for n in (3, 7, 11, 51):
            cands = candidate_grid(STRATEGIES["proper_opt"], GridSpec(2, n))
            taus = [c.tau for c in cands]
            assert taus[0] == 0.0 and taus[-1] == 1.0
            assert 0.5 in taus
        circ = [c.c1 for c in candidate_grid(STRATEGIES["shared_eq"], GridSpec(7, 3))]
        assert circ[0] == 0.0 and circ[-1] == 1.0


class TestGridSearch:
    def test_no_interference_prefers_proper_signals(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            gains = LinkGains(*(10 ** rng.uniform(-1, 2, size=4)), 0.0)
            res = grid_search(STRATEGIES["distinct_opt"], SMALL, UNIT, gains)
            assert (res.best.c1, res.best.c2) == (0.0, 0.0)

    def test_symmetric_unit_channels(self):
        gains = LinkGains(1.0, 1.0, 1.0, 1.0, 1.0)
        res = grid_search(STRATEGIES["distinct_opt"], SMALL, UNIT, gains)
        assert res.best.tau == 0.5
        swapped = SignalConfig(res.best.c2, res.best.c1, 1.0 - res.best.tau)
        assert total_rate(swapped, UNIT, gains).total == res.rate

    def test_high_interference_drives_circularities_to_one(self):
        gains = LinkGains(10.0, 10.0, 10.0, 10.0, 100.0)
        res = grid_search(STRATEGIES["distinct_eq"], SMALL, UNIT, gains)
        assert (res.best.c1, res.best.c2) == (1.0, 1.0)

    def test_result_rate_is_recomputed_from_best(self):
        rng = np.random.default_rng(22)
        for key in STRATEGIES:
            gains = random_gains(rng)
            res = grid_search(STRATEGIES[key], SMALL, UNIT, gains)
            assert res.rate == total_rate(res.best, UNIT, gains).total
            assert res.rate == res.breakdown.total

    def test_deterministic(self):
        gains = LinkGains(2.0, 0.3, 1.5, 0.8, 4.0)
        a = grid_search(STRATEGIES["distinct_opt"], SMALL, UNIT, gains)
        b = grid_search(STRATEGIES["distinct_opt"], SMALL, UNIT, gains)
        assert a == b

    def test_containment_dominance_per_realization(self):
        rng = np.random.default_rng(23)
        chains = [
            ("proper_eq", "shared_eq", "distinct_eq"),
            ("proper_eq", "proper_opt"),
            ("shared_eq", "shared_opt"),
            ("distinct_eq", "distinct_opt"),
            ("shared_opt", "distinct_opt"),
            ("maximp_eq", "maximp_opt"),
        ]
        for _ in range(150):
            gains = random_gains(rng)
            rates = {
                key: grid_search(STRATEGIES[key], SMALL, UNIT, gains).rate
                for key in STRATEGIES
            }
            for chain in chains:
                for weaker, stronger in zip(chain, chain[1:]):
                    assert rates[stronger] >= rates[weaker]

    def test_agrees_with_independent_brute_force(self):
        rng = np.random.default_rng(24)
        grid = GridSpec(circ_points=11, tau_points=11)
        for key in ("distinct_opt", "shared_opt", "proper_opt", "maximp_eq"):
            for _ in range(5):
                gains = random_gains(rng)
                res = grid_search(STRATEGIES[key], grid, UNIT, gains)
                cfg, rate = brute_force_best(key, grid, UNIT, gains)
                assert res.rate == rate
                assert res.best == cfg
