"""Constellations, quantizers, channel configuration, and rate pairs."""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtwc.model import (
    ChannelConfig,
    Constellation,
    RatePair,
    UniformQuantizer,
    boundaries,
    constellation_from_spec,
    make_pam,
    make_psk,
    quantize,
    rotate,
    unquantized_capacity,
)


class TestBoundaries:
    def test_eight_cells_unit_grain(self):
        (edges,) = boundaries(UniformQuantizer(8, 1.0))
        assert edges.tolist() == [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]

    def test_grain_scales_edges(self):
        (edges,) = boundaries(UniformQuantizer(8, 1.3))
        np.testing.assert_allclose(
            edges, [-3.9, -2.6, -1.3, 0.0, 1.3, 2.6, 3.9], atol=1e-12
        )

    def test_sign_quantizer_keeps_only_center(self):
        (edges,) = boundaries(UniformQuantizer(2, 5.0))
        assert edges.tolist() == [0.0]

    def test_two_dim_quantizer_has_two_axes(self):
        first, second = boundaries(UniformQuantizer(8, 0.5, levels2=4))
        assert first.size == 7 and second.size == 3

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"levels": 3, "grain": 1.0},
            {"levels": 0, "grain": 1.0},
            {"levels": 8, "grain": 0.0},
            {"levels": 8, "grain": -1.0},
            {"levels": 8, "grain": 1.0, "levels2": 5},
        ],
    )
    def test_rejects_invalid_quantizers(self, kwargs):
        with pytest.raises(ValueError):
            UniformQuantizer(**kwargs)


class TestQuantize:
    def test_interior_cell(self):
        assert quantize(UniformQuantizer(8, 1.0), 0.3) == 5

    def test_saturation(self):
        assert quantize(UniformQuantizer(8, 1.0), 100.0) == 8
        assert quantize(UniformQuantizer(8, 1.0), -100.0) == 1

    def test_two_dim_lookup(self):
        qz = UniformQuantizer(8, 1.0, levels2=8)
        assert quantize(qz, complex(-0.5, 2.4)) == (4, 7)
        assert quantize(qz, (-0.5, 2.4)) == (4, 7)

    def test_boundary_goes_to_upper_cell(self):
        # Cells are half-open [b_{i-1}, b_i).
        assert quantize(UniformQuantizer(8, 1.0), 1.0) == 6
        assert quantize(UniformQuantizer(8, 1.0), 0.0) == 5

    def test_rejects_nonfinite_and_complex_on_1d(self):
        qz = UniformQuantizer(8, 1.0)
        with pytest.raises(ValueError):
            quantize(qz, float("nan"))
        with pytest.raises(ValueError):
            quantize(qz, complex(0.0, 1.0))

    @given(
        st.integers(1, 8),
        st.floats(0.05, 4.0),
        st.floats(-30.0, 30.0),
    )
    def test_consistent_with_boundaries(self, half_levels, grain, y):
        qz = UniformQuantizer(2 * half_levels, grain)
        (edges,) = boundaries(qz)
        cell = quantize(qz, y)
        lo = -math.inf if cell == 1 else edges[cell - 2]
        hi = math.inf if cell == qz.levels else edges[cell - 1]
        assert lo <= y < hi

    @given(st.floats(3.01, 1e12), st.integers(1, 6))
    def test_saturating_cells_ignore_magnitude(self, y, half_levels):
        qz = UniformQuantizer(2 * half_levels, 6.0 / (2 * half_levels))
        assert quantize(qz, y) == qz.levels
        assert quantize(qz, -y) == 1


class TestConstellations:
    def test_pam8_spacing(self):
        c = make_pam(8, 1.0)
        reals = sorted(p.real for p in c.points)
        delta = 1.0 / math.sqrt(21.0)
        np.testing.assert_allclose(
            reals, [d * delta for d in (-7, -5, -3, -1, 1, 3, 5, 7)], atol=1e-12
        )

    def test_bpsk_from_pam(self):
        assert set(make_pam(2, 4.0).points) == {complex(-2, 0), complex(2, 0)}

    def test_pam4_spacing(self):
        c = make_pam(4, 1.0)
        assert max(p.real for p in c.points) == pytest.approx(
            3.0 / math.sqrt(5.0), abs=1e-12
        )

    @pytest.mark.parametrize("k", [1, 3, 0, -2])
    def test_pam_rejects_odd_or_small_sizes(self, k):
        with pytest.raises(ValueError):
            make_pam(k, 1.0)

    def test_qpsk_is_diagonal(self):
        c = make_psk(4, 2.0, 45.0)
        expected = {(1, 1), (-1, 1), (-1, -1), (1, -1)}
        got = {(round(p.real, 9), round(p.imag, 9)) for p in c.points}
        assert got == expected

    def test_bpsk_is_exactly_real(self):
        c = make_psk(2, 1.0, 0.0)
        assert c.is_1d
        assert set(c.points) == {complex(1, 0), complex(-1, 0)}

    @given(st.integers(2, 16), st.floats(0.01, 100.0))
    def test_psk_power_budget(self, k, power):
        c = make_psk(k, power)
        mean_sq = sum(abs(p) ** 2 for p in c.points) / k
        assert mean_sq == pytest.approx(power, rel=1e-12)

    @given(st.sampled_from([2, 4, 6, 8, 16]), st.floats(0.01, 100.0))
    def test_pam_power_budget(self, k, power):
        c = make_pam(k, power)
        mean_sq = sum(abs(p) ** 2 for p in c.points) / k
        assert mean_sq == pytest.approx(power, rel=1e-12)

    def test_constructor_rejects_duplicates_and_power_mismatch(self):
        with pytest.raises(ValueError):
            Constellation((1 + 0j, 1 + 0j), 1.0)
        with pytest.raises(ValueError):
            Constellation((1 + 0j, -1 + 0j), 2.0)
        with pytest.raises(ValueError):
            Constellation((), 1.0)

    def test_singleton_is_allowed(self):
        c = Constellation((0j,), 0.0)
        assert c.size == 1 and c.is_1d

    def test_json_round_trip(self):
        c = rotate(make_psk(4, 2.5, 45.0), 13.0)
        again = Constellation.from_json(json.loads(json.dumps(c.to_json())))
        assert again == c

    def test_scaled_preserves_geometry(self):
        c = make_pam(4, 1.0).scaled(3.0)
        assert c.power == pytest.approx(9.0)
        with pytest.raises(ValueError):
            c.scaled(0.0)


class TestRotation:
    def test_bpsk_quarter_turn(self):
        c = rotate(make_psk(2, 1.0, 0.0), 90.0)
        pts = sorted(c.points, key=lambda p: p.imag)
        assert pts[0].real == pytest.approx(0.0, abs=1e-12)
        assert pts[0].imag == pytest.approx(-1.0, abs=1e-12)
        assert pts[1].imag == pytest.approx(1.0, abs=1e-12)

    def test_zero_rotation_is_identity(self):
        c = make_psk(4, 2.0, 45.0)
        assert rotate(c, 0.0) == c

    def test_full_turn_is_identity_within_tolerance(self):
        c = make_pam(4, 1.0)
        back = rotate(c, 360.0)
        for p, q in zip(c.points, back.points):
            assert abs(p - q) < 1e-12

    @given(st.floats(-360.0, 360.0), st.floats(0.1, 50.0))
    def test_power_preserved(self, theta, power):
        c = rotate(make_psk(8, power), theta)
        mean_sq = sum(abs(p) ** 2 for p in c.points) / c.size
        assert mean_sq == pytest.approx(power, rel=1e-12)


class TestChannelConfig:
    def test_capacity_matches_closed_form(self):
        cfg = ChannelConfig.unit(3.0)
        pair = unquantized_capacity(cfg)
        assert pair.r1 == pytest.approx(1.0, abs=1e-15)
        assert pair.r2 == pytest.approx(1.0, abs=1e-15)

    def test_symmetric_half_bit(self):
        pair = unquantized_capacity(ChannelConfig.unit(1.0))
        assert pair.r1 == pytest.approx(0.5, abs=1e-15)
        assert pair.r2 == pytest.approx(0.5, abs=1e-15)

    def test_vanishing_power_gives_zero_rate(self):
        pair = unquantized_capacity(ChannelConfig.unit(1e-300))
        assert pair.r1 == 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            ChannelConfig.unit(3.0, noise_var=0.0)
        with pytest.raises(ValueError):
            ChannelConfig.unit(-1.0)
        with pytest.raises(ValueError):
            ChannelConfig(
                self1=float("inf"), cross1=1, cross2=1, self2=1,
                noise_var=1, power1=1, power2=1,
            )

    def test_quantizer_json_round_trip(self):
        qz = UniformQuantizer(8, 0.85, levels2=4)
        assert UniformQuantizer.from_json(qz.to_json()) == qz


class TestRatePair:
    def test_rejects_negative_or_nonfinite(self):
        with pytest.raises(ValueError):
            RatePair(-0.1, 0.0)
        with pytest.raises(ValueError):
            RatePair(float("nan"), 0.0)

    def test_sum_and_swap(self):
        rp = RatePair(0.25, 1.0)
        assert rp.sum_rate == 1.25
        assert rp.swapped() == RatePair(1.0, 0.25)


class TestNamedSpecs:
    @pytest.mark.parametrize("name,size", [("bpsk", 2), ("qpsk", 4), ("pam4", 4), ("pam8", 8)])
    def test_named_constellations(self, name, size):
        c = constellation_from_spec(name, 2.0)
        assert c.size == size and c.power == 2.0

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            constellation_from_spec("qam16", 1.0)
