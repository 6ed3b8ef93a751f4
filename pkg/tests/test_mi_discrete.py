"""Closed-form constellation rates through the quantized link."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtwc.mi_discrete import (
    cell_prob_1d,
    cell_prob_2d,
    cond_mi_discrete,
    output_pmf_given_x2,
    rate_pair_discrete,
)
from qtwc.model import (
    ChannelConfig,
    Constellation,
    UniformQuantizer,
    make_pam,
    make_psk,
    rotate,
)
from qtwc.numerics import check_pmf

mpmath.mp.dps = 40

QZ8 = UniformQuantizer(8, 1.0)
QZ8x8 = UniformQuantizer(8, 1.0, levels2=8)


def ref_cdf(x) -> float:
    return float(mpmath.ncdf(x))


class TestCellProb1d:
    def test_leftmost_cell_is_gaussian_tail(self):
        # Phi(-3) = 1.3498980316300945e-3 (high-precision oracle).
        assert cell_prob_1d(QZ8, 0.0, 1.0, 1) == pytest.approx(
            ref_cdf(-3.0), abs=1e-15
        )

    def test_center_cell(self):
        expected = ref_cdf(1.0) - ref_cdf(0.0)  # 0.341345...
        assert cell_prob_1d(QZ8, 0.0, 1.0, 5) == pytest.approx(expected, abs=1e-13)

    @given(st.floats(-30.0, 30.0), st.floats(0.05, 10.0), st.floats(0.1, 4.0))
    def test_total_probability(self, mean, sd, grain):
        qz = UniformQuantizer(8, grain)
        total = sum(cell_prob_1d(qz, mean, sd, k) for k in range(1, 9))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_cell_or_sd(self):
        with pytest.raises(ValueError):
            cell_prob_1d(QZ8, 0.0, 1.0, 0)
        with pytest.raises(ValueError):
            cell_prob_1d(QZ8, 0.0, 1.0, 9)
        with pytest.raises(ValueError):
            cell_prob_1d(QZ8, 0.0, 0.0, 1)
        with pytest.raises(ValueError):
            cell_prob_1d(QZ8x8, 0.0, 1.0, 1)


class TestCellProb2d:
    def test_center_cell_squared_factor(self):
        # Unit complex noise: each factor is Phi(sqrt(2)) - Phi(0).
        factor = ref_cdf(math.sqrt(2.0)) - 0.5
        assert cell_prob_2d(QZ8x8, 0j, (5, 5)) == pytest.approx(
            factor * factor, abs=1e-12
        )

    def test_total_probability(self):
        total = sum(
            cell_prob_2d(QZ8x8, complex(0.3, -1.2), (m, n))
            for m in range(1, 9)
            for n in range(1, 9)
        )
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_central_symmetry_at_zero_mean(self):
        for m in range(1, 9):
            for n in range(1, 9):
                assert cell_prob_2d(QZ8x8, 0j, (m, n)) == pytest.approx(
                    cell_prob_2d(QZ8x8, 0j, (9 - m, 9 - n)), abs=1e-15
                )

    def test_rejects_bad_indices_and_1d_quantizer(self):
        with pytest.raises(ValueError):
            cell_prob_2d(QZ8x8, 0j, (0, 1))
        with pytest.raises(ValueError):
            cell_prob_2d(QZ8x8, 0j, (1, 9))
        with pytest.raises(ValueError):
            cell_prob_2d(QZ8, 0j, (1, 1))


class TestOutputPmf:
    def test_singleton_far_user_degenerates_to_cell_probs(self):
        c1 = Constellation((0.7 + 0j,), 0.49)
        c2 = make_pam(2, 1.0)
        cfg = ChannelConfig.unit(0.49, 1.0)
        pmf = output_pmf_given_x2(0, c1, c2, cfg, QZ8)
        mean = cfg.cross2 * 0.7 + cfg.self2 * c2.points[0].real
        expected = [cell_prob_1d(QZ8, mean, 1.0, k) for k in range(1, 9)]
        np.testing.assert_allclose(pmf, expected, atol=1e-15)

    def test_bpsk_mixture_of_two_means(self):
        bpsk = make_psk(2, 1.0, 0.0)
        cfg = ChannelConfig.unit(1.0)
        pmf = output_pmf_given_x2(0, bpsk, bpsk, cfg, QZ8)
        x2 = bpsk.points[0].real
        expected = [
            0.5 * cell_prob_1d(QZ8, x2 + 1.0, 1.0, k)
            + 0.5 * cell_prob_1d(QZ8, x2 - 1.0, 1.0, k)
            for k in range(1, 9)
        ]
        np.testing.assert_allclose(pmf, expected, atol=1e-15)

    def test_pam8_pmfs_are_normalized_for_every_symbol(self):
        pam = make_pam(8, 1.0)
        cfg = ChannelConfig.unit(1.0)
        for i in range(8):
            pmf = output_pmf_given_x2(i, pam, pam, cfg, QZ8)
            assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
            check_pmf(pmf, atol=1e-12)

    def test_two_dim_pmf_is_normalized(self):
        qpsk = make_psk(4, 2.0, 45.0)
        cfg = ChannelConfig.unit(2.0)
        pmf = output_pmf_given_x2(1, qpsk, rotate(qpsk, 30.0), cfg, QZ8x8)
        assert pmf.shape == (64,)
        assert pmf.sum() == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch_rejected(self):
        qpsk = make_psk(4, 2.0, 45.0)
        cfg = ChannelConfig.unit(2.0)
        with pytest.raises(ValueError):
            output_pmf_given_x2(0, qpsk, qpsk, cfg, QZ8)
        with pytest.raises(ValueError):
            output_pmf_given_x2(9, qpsk, qpsk, cfg, QZ8x8)


class TestCondMi:
    def test_pam8_low_snr_benchmark_value(self):
        pam = make_pam(8, 1.0)
        rate = cond_mi_discrete(
            "1to2", pam, pam, ChannelConfig.unit(1.0), UniformQuantizer(8, 0.85)
        )
        assert rate == pytest.approx(0.46972, abs=5e-4)

    def test_pam8_mid_snr_benchmark_value(self):
        pam = make_pam(8, 3.0)
        rate = cond_mi_discrete(
            "1to2", pam, pam, ChannelConfig.unit(3.0), UniformQuantizer(8, 1.2)
        )
        assert rate == pytest.approx(0.89247, abs=5e-4)

    def test_deterministic_input_carries_no_information(self):
        c1 = Constellation((0.5 + 0j,), 0.25)
        pam = make_pam(4, 1.0)
        cfg = ChannelConfig.unit(0.25, 1.0)
        assert cond_mi_discrete("1to2", c1, pam, cfg, QZ8) == 0.0

    def test_bounded_by_alphabet_size(self):
        for k, power in ((2, 9.0), (4, 25.0), (8, 100.0)):
            pam = make_pam(k, power)
            cfg = ChannelConfig.unit(power)
            rate = cond_mi_discrete("1to2", pam, pam, cfg, QZ8)
            assert -1e-12 <= rate <= math.log2(k) + 1e-12

    def test_direction_validation(self):
        pam = make_pam(2, 1.0)
        with pytest.raises(ValueError):
            cond_mi_discrete("sideways", pam, pam, ChannelConfig.unit(1.0), QZ8)

    def test_orthogonal_rotation_decouples_the_links(self):
        # With user 2 rotated onto the imaginary axis, user 1's rate equals a
        # single-user link (the far constellation collapsed to a zero point).
        pam = make_pam(4, 10.0)
        cfg = ChannelConfig.unit(10.0)
        full = cond_mi_discrete("1to2", pam, rotate(pam, 90.0), cfg, QZ8x8)
        alone = cond_mi_discrete(
            "1to2", pam, Constellation((0j,), 0.0), cfg, QZ8x8
        )
        assert full == pytest.approx(alone, abs=1e-9)

    def test_real_constellations_reduce_to_half_variance_1d(self):
        # A 2-D quantizer on purely real inputs sees only per-component noise
        # (variance noise_var / 2) on the active axis.
        pam = make_pam(4, 2.0)
        cfg = ChannelConfig.unit(2.0)
        two_dim = cond_mi_discrete("1to2", pam, pam, cfg, QZ8x8)
        one_dim = cond_mi_discrete(
            "1to2", pam, pam, cfg.with_noise_var(cfg.noise_var / 2.0), QZ8
        )
        assert two_dim == pytest.approx(one_dim, abs=1e-12)

    @pytest.mark.parametrize("two_dim", [False, True])
    def test_refining_the_partition_never_loses_rate(self, two_dim):
        if two_dim:
            coarse = UniformQuantizer(8, 1.0, levels2=8)
            fine = UniformQuantizer(14, 0.5, levels2=14)
            c = make_psk(4, 3.0, 45.0)
            c2 = rotate(c, 30.0)
        else:
            coarse = UniformQuantizer(8, 1.0)
            fine = UniformQuantizer(14, 0.5)
            c = make_pam(4, 3.0)
            c2 = c
        cfg = ChannelConfig.unit(3.0)
        assert cond_mi_discrete("1to2", c, c2, cfg, fine) >= cond_mi_discrete(
            "1to2", c, c2, cfg, coarse
        ) - 1e-12

    def test_exchange_symmetry_is_exact(self):
        cfg = ChannelConfig(
            self1=2.0, cross1=0.7, cross2=1.3, self2=1.7,
            noise_var=0.8, power1=2.0, power2=5.0,
        )
        swapped = ChannelConfig(
            self1=1.7, cross1=1.3, cross2=0.7, self2=2.0,
            noise_var=0.8, power1=5.0, power2=2.0,
        )
        c1 = make_pam(4, 2.0)
        c2 = make_psk(4, 5.0, 45.0)
        forward = rate_pair_discrete(c1, c2, cfg, QZ8x8)
        backward = rate_pair_discrete(c2, c1, swapped, QZ8x8)
        assert forward.r1 == backward.r2
        assert forward.r2 == backward.r1

    def test_symmetric_setup_has_equal_rates(self):
        pam = make_pam(8, 2.0)
        pair = rate_pair_discrete(pam, pam, ChannelConfig.unit(2.0), QZ8)
        assert pair.r1 == pytest.approx(pair.r2, abs=1e-9)

    def test_qpsk_ten_db_regression(self):
        # Frozen after first computation; cross-checked against the Monte
        # Carlo estimator in the acceptance suite.
        qpsk = make_psk(4, 10.0, 45.0)
        pair = rate_pair_discrete(qpsk, qpsk, ChannelConfig.unit(10.0), QZ8x8)
        assert pair.r1 == pytest.approx(1.9869756938824836, abs=1e-9)
        assert pair.r2 == pytest.approx(1.9869756938824836, abs=1e-9)

    @given(st.floats(1.0, 85.0))
    @settings(max_examples=12)
    def test_rotation_sign_symmetry(self, theta):
        pam = make_pam(4, 5.0)
        cfg = ChannelConfig.unit(5.0)
        plus = rate_pair_discrete(pam, rotate(pam, theta), cfg, QZ8x8)
        minus = rate_pair_discrete(pam, rotate(pam, -theta), cfg, QZ8x8)
        assert plus.r1 == pytest.approx(minus.r1, abs=1e-9)
        assert plus.r2 == pytest.approx(minus.r2, abs=1e-9)
