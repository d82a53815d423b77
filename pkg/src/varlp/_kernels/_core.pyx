# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: modular power sums, the lattice convolution kernel,
and the closed-form transform of step functions."""

import numpy as np

from libc.math cimport M_PI, fabs, log, pow


def pow_sum(const double[::1] mags, const double[::1] exps, double inv_lam):
    """Sum of (mags[i] * inv_lam) ** exps[i].  mags must be nonnegative."""
    cdef Py_ssize_t i, n = mags.shape[0]
    cdef double acc = 0.0
    for i in range(n):
        acc += pow(mags[i] * inv_lam, exps[i])
    return acc


def pow_sum_weighted(const double[::1] mags, const double[::1] exps, const double[::1] weights,
                     double inv_lam):
    """Sum of weights[i] * (mags[i] * inv_lam) ** exps[i]."""
    cdef Py_ssize_t i, n = mags.shape[0]
    cdef double acc = 0.0
    for i in range(n):
        acc += weights[i] * pow(mags[i] * inv_lam, exps[i])
    return acc


def hilbert_direct(const double[::1] values, long in_start, long out_start,
                   Py_ssize_t n_out):
    """Exact sums b_m / (n - m) over the support, skipping m == n."""
    out = np.zeros(n_out, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j, n_in = values.shape[0]
    cdef long n, m
    cdef double acc
    for i in range(n_out):
        n = out_start + i
        acc = 0.0
        for j in range(n_in):
            m = in_start + j
            if m != n:
                acc += values[j] / <double>(n - m)
        o[i] = acc
    return out


def step_hilbert(const double[::1] lo, const double[::1] hi, const double[::1] values,
                 const double[::1] xs):
    """(1/pi) * sum_i values[i] * log|(x - lo[i]) / (x - hi[i])| at each x.

    Callers must exclude x equal to any interval endpoint with a nonzero
    jump; no singularity guard is applied here.
    """
    out = np.zeros(xs.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t t, i, n_pieces = values.shape[0], n_x = xs.shape[0]
    cdef double x, acc
    for t in range(n_x):
        x = xs[t]
        acc = 0.0
        for i in range(n_pieces):
            if values[i] != 0.0:
                acc += values[i] * log(fabs((x - lo[i]) / (x - hi[i])))
        o[t] = acc / M_PI
    return out
