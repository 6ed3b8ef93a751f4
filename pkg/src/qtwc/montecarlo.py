"""Monte Carlo estimators for every analytic rate in the package.

These are the independent cross-checks: the discrete estimator simulates the
channel symbol by symbol and computes a plug-in conditional mutual
information from empirical counts, sharing nothing with the closed-form cell
probability path.  The Gaussian estimator is a hybrid: the conditioning
variables are sampled (stratified over quantile bins), while the inner cell
distribution, which is available in closed form, is used exactly; this avoids
the heavy bias of fully empirical conditional entropy under continuous
conditioning.

Standard errors come from batch means over independent batches; estimates are
reproducible for a fixed seed (per-batch substreams are derived from the seed
and the batch index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import kernels
from .mi_discrete import _require_dim_match, _roles
from .model import ChannelConfig, Constellation, UniformQuantizer

MIN_SAMPLES_DISCRETE = 10_000
MIN_SAMPLES_GAUSSIAN = 100_000
DEFAULT_BATCHES = 20

# Quantile strata per batch for the Gaussian hybrid estimator.  A fixed
# modest count removes most of the between-bin variance while keeping the
# usual 1/sqrt(n) error scaling within each bin.
GAUSSIAN_STRATA = 32


@dataclass(frozen=True)
class McEstimate:
    """A simulation estimate with its batch-means standard error."""

    value: float
    stderr: float
    samples: int
    seed: int


def plugin_bias_guard(cells: int, samples: int) -> float:
    """First-order magnitude of plug-in entropy bias, in bits.

    The plug-in estimator of an entropy over ``cells`` outcomes is low by
    about ``(cells - 1) / (2 n ln 2)``; rate tests widen their tolerance by
    this guard.
    """
    return (cells - 1) / (2.0 * samples * math.log(2.0))


def _batch_sizes(samples: int, batches: int) -> list[int]:
    base, extra = divmod(samples, batches)
    return [base + (1 if b < extra else 0) for b in range(batches)]


def _batch_rng(seed: int, batch: int) -> np.random.Generator:
    # Independent substream per batch, reproducible for a fixed seed.
    return np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), batch)))


def _plugin_cond_mi_bits(counts: np.ndarray) -> float:
    """Plug-in conditional MI (far; output | local) from a count tensor.

    ``counts[i, j, cell]`` holds occurrences of local symbol i, far symbol j
    and output cell.  Empirical conditioning can only reduce entropy, so the
    result is nonnegative by construction.
    """
    total = counts.sum()
    local_counts = counts.sum(axis=1)

    def cond_entropy(table: np.ndarray) -> float:
        # sum over rows: (n_row / n) * H(row / n_row)
        rows = table.reshape(-1, table.shape[-1]).astype(np.float64)
        n_rows = rows.sum(axis=1, keepdims=True)
        p = np.divide(rows, n_rows, out=np.zeros_like(rows), where=n_rows > 0)
        plogp = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        return float(-(n_rows[:, 0] / total * plogp.sum(axis=1)).sum())

    return cond_entropy(local_counts) - cond_entropy(counts)


def mc_cond_mi(
    direction: str,
    c1: Constellation,
    c2: Constellation,
    cfg: ChannelConfig,
    qz: UniformQuantizer,
    samples: int,
    seed: int,
    batches: int = DEFAULT_BATCHES,
) -> McEstimate:
    """Simulation estimate of the discrete-input conditional MI.

    Draws i.i.d. symbol pairs and noise, quantizes the received values,
    accumulates joint (local, far, cell) counts, and evaluates the plug-in
    conditional mutual information; the batch spread yields the standard
    error while the pooled counts yield the (lower-bias) value.
    """
    if samples < MIN_SAMPLES_DISCRETE:
        raise ValueError(f"need at least {MIN_SAMPLES_DISCRETE} samples")
    if batches < 2:
        raise ValueError("need at least 2 batches")
    far, far_gain, local, local_gain = _roles(direction, c1, c2, cfg)
    _require_dim_match(qz, far, local)

    k_far, k_loc = far.size, local.size
    far_pts = far.points_array()
    loc_pts = local.points_array()
    n_cells = qz.num_cells
    sd = math.sqrt(cfg.noise_var)

    batch_values = []
    totals = np.zeros((k_loc, k_far, n_cells), dtype=np.int64)
    for b, n_b in enumerate(_batch_sizes(samples, batches)):
        rng = _batch_rng(seed, b)
        i = rng.integers(0, k_loc, n_b)
        j = rng.integers(0, k_far, n_b)
        if qz.is_two_dim:
            first, second = qz.boundaries()
            comp_sd = sd / math.sqrt(2.0)
            y = (
                local_gain * loc_pts[i]
                + far_gain * far_pts[j]
                + comp_sd * rng.standard_normal(n_b)
                + 1j * comp_sd * rng.standard_normal(n_b)
            )
            cell = np.searchsorted(first, y.real, side="right") * qz.levels2
            cell += np.searchsorted(second, y.imag, side="right")
        else:
            edges = qz.boundaries()[0]
            y = (
                local_gain * loc_pts[i].real
                + far_gain * far_pts[j].real
                + sd * rng.standard_normal(n_b)
            )
            cell = np.searchsorted(edges, y, side="right")
        fused = (i * k_far + j) * n_cells + cell
        counts = np.bincount(fused, minlength=k_loc * k_far * n_cells).reshape(
            k_loc, k_far, n_cells
        )
        totals += counts
        batch_values.append(_plugin_cond_mi_bits(counts))

    value = _plugin_cond_mi_bits(totals)
    stderr = float(np.std(batch_values, ddof=1) / math.sqrt(len(batch_values)))
    return McEstimate(value=value, stderr=stderr, samples=samples, seed=seed)


def _stratified_normal(
    rng: np.random.Generator, n: int, strata: int
) -> tuple[np.ndarray, np.ndarray]:
    """Standard-normal draws stratified over equal-probability quantile bins.

    Returns the draws and their bin labels; averaging per bin and then over
    bins keeps the estimator unbiased when ``n`` is not a multiple of the
    stratum count.
    """
    bins = np.arange(n) % strata
    u = (bins + rng.random(n)) / strata
    return ndtri(u), bins


def _stratum_mean(values: np.ndarray, bins: np.ndarray, strata: int) -> float:
    sums = np.bincount(bins, weights=values, minlength=strata)
    counts = np.bincount(bins, minlength=strata)
    return float((sums / counts).mean())


def mc_cond_mi_gaussian(
    cfg: ChannelConfig,
    qz: UniformQuantizer,
    samples: int,
    seed: int,
    batches: int = DEFAULT_BATCHES,
) -> McEstimate:
    """Hybrid simulation estimate of the Gaussian-input rate.

    Samples the conditioning variables (the local symbol, then the combined
    signal mean), stratified over quantile bins of their normal laws, and
    averages the exact cell-distribution entropy at each draw.
    """
    if samples < MIN_SAMPLES_GAUSSIAN:
        raise ValueError(f"need at least {MIN_SAMPLES_GAUSSIAN} samples")
    if batches < 2:
        raise ValueError("need at least 2 batches")
    if qz.is_two_dim:
        raise ValueError("Gaussian-input analysis uses a 1-D quantizer")

    edges = qz.boundaries()[0]
    sd_far = math.sqrt(cfg.cross2**2 * cfg.power1 + cfg.noise_var)
    sd_mean = math.sqrt(cfg.cross2**2 * cfg.power1 + cfg.self2**2 * cfg.power2)
    sd_noise = math.sqrt(cfg.noise_var)

    batch_values = []
    sizes = _batch_sizes(samples, batches)
    if min(sizes) < GAUSSIAN_STRATA:
        raise ValueError("too many batches for the stratum count")
    for b, n_b in enumerate(sizes):
        rng = _batch_rng(seed, b)
        z, bins = _stratified_normal(rng, n_b, GAUSSIAN_STRATA)
        h = kernels.row_entropies_bits(
            kernels.cell_pmf(edges, cfg.self2 * math.sqrt(cfg.power2) * z, 1.0 / sd_far)
        )
        h_local = _stratum_mean(h, bins, GAUSSIAN_STRATA)
        z, bins = _stratified_normal(rng, n_b, GAUSSIAN_STRATA)
        h = kernels.row_entropies_bits(
            kernels.cell_pmf(edges, sd_mean * z, 1.0 / sd_noise)
        )
        h_both = _stratum_mean(h, bins, GAUSSIAN_STRATA)
        batch_values.append(h_local - h_both)

    weights = np.asarray(sizes, dtype=np.float64) / samples
    value = float(np.dot(weights, batch_values))
    stderr = float(np.std(batch_values, ddof=1) / math.sqrt(len(batch_values)))
    return McEstimate(value=value, stderr=stderr, samples=samples, seed=seed)
