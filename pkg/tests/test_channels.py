"""Tests for channel generation: fading draws, geometry and determinism."""

import math

import numpy as np
import pytest

from vfdrelay.channels import (
    FadingSpec,
    GeometrySpec,
    db_to_linear,
    derive_seed,
    draw_geometric_gains,
    draw_rayleigh_gains,
    geometry_to_mean_gains,
    substream,
)

FLAT = FadingSpec(0.0, 0.0, 0.0, 0.0, 0.0)


class TestDbToLinear:
    def test_zero_db(self):
        assert db_to_linear(0.0) == 1.0

    def test_five_db(self):
        assert db_to_linear(5.0) == pytest.approx(10**0.5, rel=1e-12)

    def test_two_decades(self):
        assert db_to_linear(20.0) == 100.0

    def test_rejects_non_finite(self):
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValueError):
                db_to_linear(bad)


class TestFadingSpec:
    def test_rejects_non_finite_means(self):
        with pytest.raises(ValueError):
            FadingSpec(-math.inf, 0.0, 0.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            FadingSpec(0.0, 0.0, math.nan, 0.0, 0.0)


class TestRayleighDraws:
    def test_same_stream_args_give_same_gains(self):
        a = draw_rayleigh_gains(FLAT, substream(123, 7))
        b = draw_rayleigh_gains(FLAT, substream(123, 7))
        assert a == b

    def test_different_realization_indices_differ(self):
        a = draw_rayleigh_gains(FLAT, substream(123, 7))
        b = draw_rayleigh_gains(FLAT, substream(123, 8))
        assert a != b

    def test_stream_independent_of_creation_order(self):
        s5 = substream(9, 5)
        s3 = substream(9, 3)
        late_g3 = draw_rayleigh_gains(FLAT, s3)
        fresh_g3 = draw_rayleigh_gains(FLAT, substream(9, 3))
        assert late_g3 == fresh_g3
        assert draw_rayleigh_gains(FLAT, s5) == draw_rayleigh_gains(FLAT, substream(9, 5))

    def test_empirical_mean_matches_configured_mean(self):
        spec = FadingSpec(0.0, 3.0, -3.0, 0.0, 0.0)
        stream = substream(2024, 0)
        n = 100_000
        acc = np.zeros(5)
        for _ in range(n):
            g = draw_rayleigh_gains(spec, stream)
            acc += (g.h1_sq, g.h2_sq, g.g1_sq, g.g2_sq, g.f_sq)
        means = acc / n
        targets = [db_to_linear(v) for v in (0.0, 3.0, -3.0, 0.0, 0.0)]
        for got, want in zip(means, targets):
            assert abs(got - want) <= 0.02 * want

    def test_gains_strictly_positive(self):
        stream = substream(1, 0)
        for _ in range(1000):
            g = draw_rayleigh_gains(FLAT, stream)
            assert min(g.h1_sq, g.h2_sq, g.g1_sq, g.g2_sq, g.f_sq) > 0

    def test_seed_range_enforced(self):
        with pytest.raises(ValueError):
            substream(-1, 0)
        with pytest.raises(ValueError):
            substream(2**64, 0)
        with pytest.raises(ValueError):
            derive_seed(-5, 0)


class TestGeometry:
    def test_source_to_fixed_relay_mean(self):
        geo = GeometrySpec(d_sr2=0.3, vertical_offset=0.1, pathloss_exp=2.0)
        m = geometry_to_mean_gains(geo)
        # dist(S, R1) = sqrt(0.5^2 + 0.1^2), gain = dist^-2
        assert m.h1_sq == pytest.approx(1.0 / 0.26, rel=1e-12)

    def test_opposite_side_offsets_at_midpoint(self):
        geo = GeometrySpec(d_sr2=0.5, vertical_offset=0.1, pathloss_exp=2.0)
        m = geometry_to_mean_gains(geo)
        assert m.f_sq == pytest.approx(25.0, rel=1e-12)

    def test_mirror_symmetry_at_midpoint(self):
        m = geometry_to_mean_gains(GeometrySpec(d_sr2=0.5))
        assert m.h1_sq == m.h2_sq
        assert m.g1_sq == m.g2_sq

    def test_pathloss_exponent_enters(self):
        m2 = geometry_to_mean_gains(GeometrySpec(d_sr2=0.3, pathloss_exp=2.0))
        m4 = geometry_to_mean_gains(GeometrySpec(d_sr2=0.3, pathloss_exp=4.0))
        assert m4.h1_sq == pytest.approx(m2.h1_sq**2, rel=1e-12)

    def test_invalid_specs_rejected(self):
        for bad in (0.0, 1.0, -0.2, 1.4):
            with pytest.raises(ValueError):
                GeometrySpec(d_sr2=bad)
        with pytest.raises(ValueError):
            GeometrySpec(d_sr2=0.5, vertical_offset=0.0)
        with pytest.raises(ValueError):
            GeometrySpec(d_sr2=0.5, pathloss_exp=0.0)
        with pytest.raises(ValueError):
            GeometrySpec(d_sr2=0.5, shadowing_db=-1.0)


class TestGeometricDraws:
    def test_deterministic_reduction_without_shadowing_and_fading(self):
        geo = GeometrySpec(d_sr2=0.4, shadowing_db=0.0)
        m = geometry_to_mean_gains(geo)
        g = draw_geometric_gains(geo, substream(3, 0), include_fading=False)
        assert (g.h1_sq, g.h2_sq, g.g1_sq, g.g2_sq, g.f_sq) == (
            m.h1_sq,
            m.h2_sq,
            m.g1_sq,
            m.g2_sq,
            m.f_sq,
        )

    def test_shadowing_median_is_zero_db(self):
        geo = GeometrySpec(d_sr2=0.5, shadowing_db=5.0)
        m = geometry_to_mean_gains(geo)
        stream = substream(77, 0)
        offsets = np.empty(100_000)
        for k in range(offsets.size):
            g = draw_geometric_gains(geo, stream, include_fading=False)
            offsets[k] = 10.0 * math.log10(g.f_sq / m.f_sq)
        assert abs(np.median(offsets)) <= 0.1

    def test_same_stream_args_give_same_gains(self):
        geo = GeometrySpec(d_sr2=0.7)
        a = draw_geometric_gains(geo, substream(42, 11))
        b = draw_geometric_gains(geo, substream(42, 11))
        assert a == b

    def test_gains_strictly_positive(self):
        geo = GeometrySpec(d_sr2=0.25)
        stream = substream(5, 0)
        for _ in range(500):
            g = draw_geometric_gains(geo, stream)
            assert min(g.h1_sq, g.h2_sq, g.g1_sq, g.g2_sq, g.f_sq) > 0


class TestDeriveSeed:
    def test_reproducible_and_distinct_per_index(self):
        seeds = [derive_seed(10, i) for i in range(8)]
        assert seeds == [derive_seed(10, i) for i in range(8)]
        assert len(set(seeds)) == len(seeds)
        assert all(0 <= s < 2**64 for s in seeds)
