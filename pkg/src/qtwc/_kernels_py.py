"""NumPy implementation of the hot numeric kernels.

This is the fallback backend, selected when the compiled extension is
unavailable or disabled via ``QTWC_NO_EXT``.  Both backends satisfy the same
contract:

``cell_pmf(edges, means, inv_scale)``
    Row ``r`` holds the probabilities that a Gaussian with mean ``means[r]``
    and standard deviation ``1 / inv_scale`` lands in each cell of the
    saturating partition ``(-inf, e0), [e0, e1), ..., [e_last, +inf)``.

``row_entropies_bits(pmf)``
    Shannon entropy of every row of a 2-D array, in bits, with 0 log 0 = 0.

``weighted_cell_entropy(edges, means, weights, inv_scale)``
    ``sum_r weights[r] * H(cell_pmf row r)``, fused so the probability matrix
    never has to be materialized by the compiled backend.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr

# Probabilities at or below this level cannot contribute measurably to an
# entropy sum and are treated as exact zeros.
TINY_PROB = 1e-300


def cell_pmf(edges, means, inv_scale: float) -> np.ndarray:
    edges = np.asarray(edges, dtype=np.float64)
    means = np.asarray(means, dtype=np.float64)
    z = (edges[np.newaxis, :] - means[:, np.newaxis]) * inv_scale
    lower = ndtr(z)
    upper = ndtr(-z)
    out = np.empty((means.shape[0], edges.shape[0] + 1))
    out[:, 0] = lower[:, 0]
    # Interior cells: difference the tail that stays away from 1.0, so cells
    # far out in either direction keep their (tiny) mass instead of rounding
    # to exactly zero.
    lo = z[:, :-1]
    out[:, 1:-1] = np.where(
        lo > 0.0, upper[:, :-1] - upper[:, 1:], lower[:, 1:] - lower[:, :-1]
    )
    out[:, -1] = upper[:, -1]
    # Cancellation can leave differences a few ulp below zero.
    np.clip(out, 0.0, None, out=out)
    return out


def row_entropies_bits(pmf) -> np.ndarray:
    p = np.asarray(pmf, dtype=np.float64)
    safe = np.where(p > TINY_PROB, p, 1.0)
    return -(safe * np.log2(safe)).sum(axis=-1)


def weighted_cell_entropy(edges, means, weights, inv_scale: float) -> float:
    h = row_entropies_bits(cell_pmf(edges, means, inv_scale))
    return float(np.dot(np.asarray(weights, dtype=np.float64), h))
