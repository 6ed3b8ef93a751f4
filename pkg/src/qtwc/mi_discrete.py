"""Exact rates for equiprobable constellation inputs through the quantized
two-way link.

Every conditional output distribution is a finite mixture of Gaussian cell
distributions, so the conditional mutual information

    I(far input; quantized output | local input)

is an exact finite sum: the entropy of the per-local-symbol mixture minus the
average entropy of the fully conditioned cell distribution.

Noise conventions follow the channel model: a 1-D quantizer sees real
Gaussian noise of variance ``noise_var``; a 2-D quantizer sees circularly
symmetric complex noise of total variance ``noise_var`` (so each component
has deviation ``sqrt(noise_var / 2)``), quantized independently per
dimension.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .model import ChannelConfig, Constellation, RatePair, UniformQuantizer
from .numerics import std_normal_cdf

DIRECTIONS = ("1to2", "2to1")


def _interval_prob(lo_z: float, hi_z: float) -> float:
    # Difference of standard-normal CDFs, taken on the tail that avoids
    # cancellation against 1.0.
    if lo_z > 0.0:
        p = std_normal_cdf(-lo_z) - std_normal_cdf(-hi_z)
    else:
        p = std_normal_cdf(hi_z) - std_normal_cdf(lo_z)
    return max(p, 0.0)


def cell_prob_1d(
    qz: UniformQuantizer, mean: float, noise_sd: float, k: int
) -> float:
    """Probability that a Gaussian lands in cell ``k`` of a 1-D quantizer.

    Cell 1 and cell M are the unbounded saturation cells.
    """
    if qz.is_two_dim:
        raise ValueError("cell_prob_1d needs a 1-D quantizer")
    if not noise_sd > 0.0:
        raise ValueError("noise_sd must be positive")
    if not 1 <= k <= qz.levels:
        raise ValueError(f"cell index {k} out of range 1..{qz.levels}")
    edges = qz.boundaries()[0]
    lo = -math.inf if k == 1 else (edges[k - 2] - mean) / noise_sd
    hi = math.inf if k == qz.levels else (edges[k - 1] - mean) / noise_sd
    return _interval_prob(lo, hi)


def cell_prob_2d(
    qz: UniformQuantizer,
    mean: complex,
    cell: tuple[int, int],
    noise_sd: float = 1.0,
) -> float:
    """Probability that a complex Gaussian lands in rectangular cell (m, n).

    ``noise_sd`` is the total deviation of the circularly symmetric noise, so
    each component contributes ``noise_sd / sqrt(2)``; per-dimension factors
    multiply because quantization is independent per dimension.
    """
    if not qz.is_two_dim:
        raise ValueError("cell_prob_2d needs a 2-D quantizer")
    if not noise_sd > 0.0:
        raise ValueError("noise_sd must be positive")
    m, n = cell
    if not 1 <= m <= qz.levels:
        raise ValueError(f"first index {m} out of range 1..{qz.levels}")
    if not 1 <= n <= qz.levels2:
        raise ValueError(f"second index {n} out of range 1..{qz.levels2}")
    mean = complex(mean)
    comp_sd = noise_sd / math.sqrt(2.0)
    first, second = qz.boundaries()

    def factor(edges: np.ndarray, count: int, idx: int, mu: float) -> float:
        lo = -math.inf if idx == 1 else (edges[idx - 2] - mu) / comp_sd
        hi = math.inf if idx == count else (edges[idx - 1] - mu) / comp_sd
        return _interval_prob(lo, hi)

    return factor(first, qz.levels, m, mean.real) * factor(
        second, qz.levels2, n, mean.imag
    )


def _require_dim_match(
    qz: UniformQuantizer, *constellations: Constellation
) -> None:
    if not qz.is_two_dim and not all(c.is_1d for c in constellations):
        raise ValueError("1-D quantizer cannot carry a 2-D constellation")


def _pmf_matrix_1d(
    qz: UniformQuantizer,
    local_vals: np.ndarray,
    local_gain: float,
    far_vals: np.ndarray,
    far_gain: float,
    noise_var: float,
) -> np.ndarray:
    """Cell pmfs for every (local, far) symbol pair: (K_loc, K_far, M)."""
    edges = qz.boundaries()[0]
    means = np.add.outer(local_gain * local_vals, far_gain * far_vals)
    pmf = kernels.cell_pmf(edges, means.ravel(), 1.0 / math.sqrt(noise_var))
    return pmf.reshape(means.shape + (qz.levels,))


def _pmf_factors_2d(
    qz: UniformQuantizer,
    local_pts: np.ndarray,
    local_gain: float,
    far_pts: np.ndarray,
    far_gain: float,
    noise_var: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension cell pmfs for every symbol pair.

    Returns arrays of shape (K_loc, K_far, levels) and (K_loc, K_far,
    levels2); the joint cell pmf of a pair is their outer product.
    """
    first, second = qz.boundaries()
    means = np.add.outer(local_gain * local_pts, far_gain * far_pts)
    inv = math.sqrt(2.0 / noise_var)
    ph = kernels.cell_pmf(first, means.real.ravel(), inv)
    pv = kernels.cell_pmf(second, means.imag.ravel(), inv)
    return (
        ph.reshape(means.shape + (qz.levels,)),
        pv.reshape(means.shape + (qz.levels2,)),
    )


def _mi_one_direction(
    far: Constellation,
    far_gain: float,
    local: Constellation,
    local_gain: float,
    noise_var: float,
    qz: UniformQuantizer,
) -> float:
    _require_dim_match(qz, far, local)
    if not qz.is_two_dim:
        pmf = _pmf_matrix_1d(
            qz,
            local.points_array().real,
            local_gain,
            far.points_array().real,
            far_gain,
            noise_var,
        )
        k_loc, k_far, m = pmf.shape
        h_both = kernels.row_entropies_bits(pmf.reshape(-1, m)).mean()
        mixtures = pmf.mean(axis=1)
        h_local = kernels.row_entropies_bits(mixtures).mean()
        return max(float(h_local - h_both), 0.0)

    ph, pv = _pmf_factors_2d(
        qz,
        local.points_array(),
        local_gain,
        far.points_array(),
        far_gain,
        noise_var,
    )
    k_loc, k_far, m = ph.shape
    n = pv.shape[2]
    # A product pmf's entropy is the sum of its per-dimension entropies.
    h_both = (
        kernels.row_entropies_bits(ph.reshape(-1, m))
        + kernels.row_entropies_bits(pv.reshape(-1, n))
    ).mean()
    joint = np.einsum("ijm,ijn->imn", ph, pv) / k_far
    h_local = kernels.row_entropies_bits(joint.reshape(k_loc, m * n)).mean()
    return max(float(h_local - h_both), 0.0)


def _roles(
    direction: str, c1: Constellation, c2: Constellation, cfg: ChannelConfig
) -> tuple[Constellation, float, Constellation, float]:
    """(far constellation, far gain, local constellation, local gain)."""
    if direction == "1to2":
        return c1, cfg.cross2, c2, cfg.self2
    if direction == "2to1":
        return c2, cfg.cross1, c1, cfg.self1
    raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def output_pmf_given_x2(
    x2_index: int,
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
) -> np.ndarray:
    """Receiver-2 cell distribution given the user-2 symbol at ``x2_index``.

    Mixture over the equiprobable user-1 symbols; for a 2-D quantizer the
    (m, n) cells are flattened row-major into a vector of length
    ``levels * levels2``.
    """
    if not 0 <= x2_index < c2.size:
        raise ValueError(f"x2_index {x2_index} out of range 0..{c2.size - 1}")
    _require_dim_match(qz, c1, c2)
    local = c2.points_array()[x2_index : x2_index + 1]
    if not qz.is_two_dim:
        pmf = _pmf_matrix_1d(
            qz,
            local.real,
            cfg.self2,
            c1.points_array().real,
            cfg.cross2,
            cfg.noise_var,
        )
        return pmf[0].mean(axis=0)
    ph, pv = _pmf_factors_2d(
        qz, local, cfg.self2, c1.points_array(), cfg.cross2, cfg.noise_var
    )
    joint = np.einsum("jm,jn->mn", ph[0], pv[0]) / c1.size
    return joint.reshape(-1)


def cond_mi_discrete(
    direction: str,
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
) -> float:
    """Rate of one user's message in bits per channel use.

    ``"1to2"`` is the rate of user 1 decoded at receiver 2 given the user-2
    symbol; ``"2to1"`` the reverse.  Bounded by log2 of the transmitting
    constellation size.
    """
    far, far_gain, local, local_gain = _roles(direction, c1, c2, cfg)
    return _mi_one_direction(far, far_gain, local, local_gain, cfg.noise_var, qz)


def rate_pair_discrete(
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
) -> RatePair:
    """Both directions' rates for a fixed pair of constellations."""
    return RatePair(
        cond_mi_discrete("1to2", c1, c2, cfg, qz),
        cond_mi_discrete("2to1", c1, c2, cfg, qz),
    )
