# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled implementation of the hot numeric kernels.

Same contract as ``_kernels_py`` (the NumPy fallback): Gaussian cell
probabilities against a saturating partition and entropy accumulation, with
the probability/entropy loops fused where the matrix is not needed.
"""

from libc.math cimport INFINITY, erfc, log2

import numpy as np

DEF TINY_PROB = 1e-300
DEF INV_SQRT2 = 0.7071067811865475244008443621048490


cdef inline double _phi(double x) noexcept nogil:
    return 0.5 * erfc(-x * INV_SQRT2)


cdef inline double _interval(double lo, double hi) noexcept nogil:
    # CDF difference on the tail that avoids cancellation against 1.0.
    cdef double p
    if lo > 0.0:
        p = _phi(-lo) - _phi(-hi)
    else:
        p = _phi(hi) - _phi(lo)
    return p if p > 0.0 else 0.0


def cell_pmf(edges, means, double inv_scale):
    cdef double[::1] e = np.ascontiguousarray(edges, dtype=np.float64)
    cdef double[::1] mu = np.ascontiguousarray(means, dtype=np.float64)
    cdef Py_ssize_t n_edges = e.shape[0]
    cdef Py_ssize_t rows = mu.shape[0]
    out_arr = np.empty((rows, n_edges + 1), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t r, k
    cdef double lo, hi
    with nogil:
        for r in range(rows):
            lo = -INFINITY
            for k in range(n_edges):
                hi = (e[k] - mu[r]) * inv_scale
                out[r, k] = _interval(lo, hi)
                lo = hi
            out[r, n_edges] = _interval(lo, INFINITY)
    return out_arr


def row_entropies_bits(pmf):
    cdef double[:, ::1] p = np.ascontiguousarray(pmf, dtype=np.float64)
    cdef Py_ssize_t rows = p.shape[0]
    cdef Py_ssize_t cols = p.shape[1]
    out_arr = np.empty(rows, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t r, c
    cdef double acc, v
    with nogil:
        for r in range(rows):
            acc = 0.0
            for c in range(cols):
                v = p[r, c]
                if v > TINY_PROB:
                    acc -= v * log2(v)
            out[r] = acc
    return out_arr


def weighted_cell_entropy(edges, means, weights, double inv_scale):
    cdef double[::1] e = np.ascontiguousarray(edges, dtype=np.float64)
    cdef double[::1] mu = np.ascontiguousarray(means, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n_edges = e.shape[0]
    cdef Py_ssize_t rows = mu.shape[0]
    cdef Py_ssize_t r, k
    cdef double lo, hi, v, h, total = 0.0
    with nogil:
        for r in range(rows):
            lo = -INFINITY
            h = 0.0
            for k in range(n_edges):
                hi = (e[k] - mu[r]) * inv_scale
                v = _interval(lo, hi)
                if v > TINY_PROB:
                    h -= v * log2(v)
                lo = hi
            v = _interval(lo, INFINITY)
            if v > TINY_PROB:
                h -= v * log2(v)
            total += w[r] * h
    return total
