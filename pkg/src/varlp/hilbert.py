"""The discrete Hilbert transform and its continuous step-function analogue.

The lattice transform is (Hb)_n = sum_{m != n} b_m / (n - m), computed either
by exact direct summation or by zero-padded FFT convolution (padding large
enough that wrap-around is provably absent, not merely small).  For step
functions the principal-value transform has a closed log form, evaluated off
breakpoints where it is finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import svdvals
from scipy.sparse.linalg import LinearOperator, eigsh

from . import _kernels as kernels
from .spaces import Sequence, StepFunction

__all__ = [
    "HilbertOptions",
    "PointwiseBound",
    "SingularPointError",
    "discrete_hilbert",
    "pointwise_bound",
    "continuous_hilbert_step",
    "operator_matrix",
    "FiniteSection",
    "finite_section_norm",
]


class SingularPointError(ValueError):
    """Evaluation requested exactly at a breakpoint, where the closed form diverges."""


@dataclass(frozen=True)
class HilbertOptions:
    """method: "direct" (exact sums) or "fft"; fft_padding: output margin
    beyond the input window when no output window is given."""

    method: str = "fft"
    fft_padding: int = 0

    def __post_init__(self):
        if self.method not in ("direct", "fft"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.fft_padding < 0:
            raise ValueError("fft_padding must be >= 0")


def _check_window(window) -> tuple[int, int]:
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("empty window")
    return lo, hi


def _direct_real(values: np.ndarray, in_start: int, out_lo: int, n_out: int) -> np.ndarray:
    return kernels.hilbert_direct(np.ascontiguousarray(values, dtype=np.float64),
                                  in_start, out_lo, n_out)


def _fft_real(values: np.ndarray, in_start: int, out_lo: int, n_out: int) -> np.ndarray:
    n_in = values.size
    k_lo = out_lo - (in_start + n_in - 1)
    ks = np.arange(k_lo, out_lo + n_out - in_start)
    with np.errstate(divide="ignore"):
        h = np.where(ks == 0, 0.0, 1.0 / ks)
    full = n_in + h.size - 1
    nfft = 1 << (full - 1).bit_length()
    conv = np.fft.irfft(np.fft.rfft(values, nfft) * np.fft.rfft(h, nfft), nfft)
    return conv[n_in - 1:n_in - 1 + n_out]


def discrete_hilbert(b: Sequence, out_window=None,
                     opts: HilbertOptions | None = None) -> Sequence:
    """Transform of a finitely supported sequence on an output window.

    With no ``out_window`` the input window padded by ``opts.fft_padding`` on
    both sides is used.  Both methods agree to roundoff; the FFT path pads
    the circular convolution past the sum of the window lengths so no
    wrap-around can occur.
    """
    opts = opts or HilbertOptions()
    if out_window is None:
        if b.values.size == 0:
            raise ValueError("empty out_window")
        pad = opts.fft_padding
        out_lo, out_hi = b.window_start - pad, b.window_stop - 1 + pad
    else:
        out_lo, out_hi = _check_window(out_window)
    n_out = out_hi - out_lo + 1

    if b.is_zero:
        return Sequence(out_lo, np.zeros(n_out))

    parts = ((b.values.real, b.values.imag) if b.is_complex else (b.values,))
    method = _direct_real if opts.method == "direct" else _fft_real
    outs = [method(np.asarray(part, dtype=np.float64), b.window_start, out_lo, n_out)
            for part in parts]
    if b.is_complex:
        return Sequence(out_lo, outs[0] + 1j * outs[1])
    return Sequence(out_lo, outs[0])


@dataclass(frozen=True)
class PointwiseBound:
    """Uniform bound |Hb_n| <= constant * ||b|| in the constant-exponent
    space with exponent p_bar; the constant is the closed geometric-series
    form 4 * 2^(-2/p_bar) / (1 - 2^(-1/p_bar))."""

    p_bar: float
    constant: float


def pointwise_bound(p_bar: float) -> PointwiseBound:
    p_bar = float(p_bar)
    if not math.isfinite(p_bar) or p_bar <= 1.0:
        raise ValueError(f"pointwise bound requires p_bar in (1, inf), got {p_bar!r}")
    r = 2.0 ** (-1.0 / p_bar)
    return PointwiseBound(p_bar, 4.0 * r * r / (1.0 - r))


def continuous_hilbert_step(f: StepFunction, x):
    """(1/pi) PV-integral of f(t)/(x - t): exact log closed form.

    ``x`` may be a scalar or an array; none of its entries may coincide with
    a breakpoint of ``f`` (the closed form is genuinely infinite there).  At
    interior points the symmetric singularity cancels, so the same formula
    applies everywhere else.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    scalar = np.ndim(x) == 0
    if f.values.size == 0:
        out = np.zeros(xs.size)
        return float(out[0]) if scalar else out
    edges = f.edge_floats()
    if np.any(np.isin(xs, edges)):
        bad = xs[np.isin(xs, edges)][0]
        raise SingularPointError(f"x = {bad!r} lies on a breakpoint")
    lo = np.ascontiguousarray(edges[:-1])
    hi = np.ascontiguousarray(edges[1:])
    if f.is_complex:
        out = (kernels.step_hilbert(lo, hi, np.ascontiguousarray(f.values.real), xs)
               + 1j * kernels.step_hilbert(lo, hi, np.ascontiguousarray(f.values.imag), xs))
        return complex(out[0]) if scalar else out
    out = kernels.step_hilbert(lo, hi, np.ascontiguousarray(f.values, dtype=np.float64), xs)
    return float(out[0]) if scalar else out


def operator_matrix(in_window, out_window) -> np.ndarray:
    """Finite section of the lattice kernel: entry (n, m) = 1/(n - m), zero diagonal."""
    in_lo, in_hi = _check_window(in_window)
    out_lo, out_hi = _check_window(out_window)
    m = np.arange(in_lo, in_hi + 1)
    n = np.arange(out_lo, out_hi + 1)
    diff = n[:, None] - m[None, :]
    with np.errstate(divide="ignore"):
        return np.where(diff == 0, 0.0, 1.0 / diff)


class FiniteSection:
    """Cached applicator b -> (Hb restricted) for one square window.

    Precomputes the kernel FFT, so repeated applications cost one forward
    and one inverse transform.  Stateless after construction (safe to share
    across threads).
    """

    def __init__(self, window):
        self.lo, self.hi = _check_window(window)
        self.size = self.hi - self.lo + 1
        ks = np.arange(-(self.size - 1), self.size)
        with np.errstate(divide="ignore"):
            h = np.where(ks == 0, 0.0, 1.0 / ks)
        full = 2 * self.size - 1
        self._nfft = 1 << (full - 1).bit_length()
        self._h_hat = np.fft.rfft(h, self._nfft)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Hb on the window for b given on the same window."""
        conv = np.fft.irfft(np.fft.rfft(values, self._nfft) * self._h_hat, self._nfft)
        return conv[self.size - 1:2 * self.size - 1]

    def apply_transpose(self, values: np.ndarray) -> np.ndarray:
        # The section matrix is antisymmetric.
        return -self.apply(values)


def finite_section_norm(half_width: int, tol: float = 1e-13) -> float:
    """Largest singular value of the section on [-N, N] x [-N, N].

    Uses Lanczos iteration on the positive-semidefinite square of the
    section (FFT matvecs) with a fixed start vector, so results are
    deterministic; tiny sections fall back to a dense SVD.
    """
    if half_width < 0:
        raise ValueError("half_width must be >= 0")
    dim = 2 * half_width + 1
    if dim < 16:
        return float(svdvals(operator_matrix((-half_width, half_width),
                                             (-half_width, half_width)))[0])
    section = FiniteSection((-half_width, half_width))

    def matvec(x):
        return -section.apply(section.apply(x))

    op = LinearOperator((dim, dim), matvec=matvec, dtype=np.float64)
    v0 = np.sin(np.pi * (np.arange(dim) + 1.0) / (dim + 1.0))
    vals = eigsh(op, k=1, which="LA", v0=v0, tol=tol,
                 ncv=min(dim, 64), return_eigenvectors=False)
    return float(np.sqrt(max(vals[0], 0.0)))
