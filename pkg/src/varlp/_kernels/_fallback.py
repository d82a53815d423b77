"""Pure-numpy implementations of the hot kernels.

Semantics match ``_core`` (the compiled module); only summation order and
therefore the last couple of bits may differ.
"""

import numpy as np

# Direct-summation fallback processes output indices in blocks so the
# (n_out x n_in) kernel matrix stays bounded in memory.
_BLOCK = 2048


def pow_sum(mags, exps, inv_lam):
    mags = np.asarray(mags, dtype=np.float64)
    exps = np.asarray(exps, dtype=np.float64)
    if mags.size == 0:
        return 0.0
    return float(np.sum(np.power(mags * inv_lam, exps)))


def pow_sum_weighted(mags, exps, weights, inv_lam):
    mags = np.asarray(mags, dtype=np.float64)
    exps = np.asarray(exps, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if mags.size == 0:
        return 0.0
    return float(np.sum(weights * np.power(mags * inv_lam, exps)))


def hilbert_direct(values, in_start, out_start, n_out):
    values = np.asarray(values, dtype=np.float64)
    out = np.zeros(n_out, dtype=np.float64)
    if values.size == 0:
        return out
    m = in_start + np.arange(values.size)
    for lo in range(0, n_out, _BLOCK):
        hi = min(lo + _BLOCK, n_out)
        n = out_start + np.arange(lo, hi)
        diff = n[:, None] - m[None, :]
        with np.errstate(divide="ignore"):
            kernel = np.where(diff == 0, 0.0, 1.0 / diff)
        out[lo:hi] = kernel @ values
    return out


def step_hilbert(lo, hi, values, xs):
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros(xs.size, dtype=np.float64)
    keep = values != 0.0
    if not np.any(keep):
        return out
    lo, hi, values = lo[keep], hi[keep], values[keep]
    for start in range(0, xs.size, _BLOCK):
        stop = min(start + _BLOCK, xs.size)
        x = xs[start:stop, None]
        logs = np.log(np.abs((x - lo[None, :]) / (x - hi[None, :])))
        out[start:stop] = logs @ values
    return out / np.pi
