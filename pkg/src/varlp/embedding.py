"""Bridge between sequences and step functions.

A sequence b with exponents p maps to the step function f carrying 2*pi*b_k
on [k - 1/4, k + 1/4] and the exponent function taking p_k on
[k - 1/2, k + 1/2).  On each unit cell the continuous transform of f splits
as Hf = F + G1 + G2 with F the lattice transform value, G2 the cell's own
log term, and G1 the lattice remainder controlled by 3|b_m|/|n-m|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import _kernels as kernels
from .exponents import ExponentFunction, ExponentSequence
from .hilbert import continuous_hilbert_step
from .spaces import Sequence, StepFunction

__all__ = [
    "Embedding",
    "GDecomposition",
    "embed",
    "g_decompose",
    "cell_modular_sum",
]

TWO_PI = 2.0 * math.pi
_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class Embedding:
    """A sequence, its exponents, and their step-function counterparts.

    ``f`` places 2*pi*b_k on cells of half-width 1/4 centered at integers;
    ``pfun`` places p_k on half-open cells of half-width 1/2 and extends with
    the tail exponent.
    """

    b: Sequence
    p: ExponentSequence
    f: StepFunction
    pfun: ExponentFunction


def embed(b: Sequence, p: ExponentSequence) -> Embedding:
    """Build the step function and exponent function for (b, p).

    The explicit window is the union of both input windows, so every entry
    of either participates; outside it the function vanishes and the
    exponent is the tail value.
    """
    windows = []
    if b.values.size:
        windows.append((b.window_start, b.window_stop - 1))
    if p.values.size:
        windows.append((p.window_start, p.window_stop - 1))
    if windows:
        lo = min(w[0] for w in windows)
        hi = max(w[1] for w in windows)
        pieces = []
        for k in range(lo, hi + 1):
            pieces.append((k - _QUARTER, k + _QUARTER, TWO_PI * b.at(k)))
            if k < hi:
                pieces.append((k + _QUARTER, k + 1 - _QUARTER, 0.0))
        f = StepFunction.from_pieces(pieces)
        breaks = np.asarray([k - 0.5 for k in range(lo, hi + 2)])
        values = np.asarray([p.tail, *(p.at(k) for k in range(lo, hi + 1)), p.tail])
        pfun = ExponentFunction(breaks, values, description="embedded exponent cells")
    else:
        f = StepFunction.zero()
        pfun = ExponentFunction.constant(p.tail, description="embedded exponent cells")
    return Embedding(b, p, f, pfun)


def cell_modular_sum(b: Sequence, p: ExponentSequence) -> float:
    """Closed form of the embedded modular: half the sum of |2 pi b_n|^{p_n}.

    Exactly-rounded summation, for bit-level agreement with the integral
    side computed on the cell refinement.
    """
    if b.values.size == 0:
        return 0.0
    exps = p.over(b.indices)
    return 0.5 * math.fsum(
        pow(abs(TWO_PI * v), q) for v, q in zip(b.values, exps) if v != 0.0
    )


@dataclass(frozen=True)
class GDecomposition:
    """Cell-n split of the continuous transform of an embedded function.

    ``f_value`` is the lattice transform at n; ``g2_at`` is the cell's own
    closed-form log term; ``g1_at`` is the remainder Hf - g2 - f_value, and
    ``g1_bound`` the lattice-sum bound 3 * sum |b_m| / |n-m|^2 valid on the
    whole cell.
    """

    n: int
    f_value: float
    g1_at: Callable
    g2_at: Callable
    g1_bound: float


def g_decompose(e: Embedding, n: int) -> GDecomposition:
    """Split Hf on the cell [n - 1/2, n + 1/2].

    G1 is evaluated by subtraction from the closed forms (exact given them);
    the defining lattice-sum form is only worth keeping as an independent
    oracle in tests.
    """
    b = e.b
    if b.is_complex:
        raise ValueError("cell decomposition is defined for real sequences")
    values = np.ascontiguousarray(b.values, dtype=np.float64)
    f_value = float(kernels.hilbert_direct(values, b.window_start, n, 1)[0])
    bn = float(b.at(n))

    def g2_at(x):
        xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
        if bn == 0.0:
            out = np.zeros(xs.size)
        else:
            if np.any(xs == n + 0.25) or np.any(xs == n - 0.25):
                raise ValueError(f"cell log term diverges at x = n +- 1/4 (n = {n})")
            out = 2.0 * bn * np.log(np.abs((xs - n + 0.25) / (xs - n - 0.25)))
        return float(out[0]) if np.ndim(x) == 0 else out

    def g1_at(x):
        return continuous_hilbert_step(e.f, x) - g2_at(x) - f_value

    ms = b.indices
    mask = ms != n
    gaps = np.abs(ms[mask] - n).astype(np.float64)
    g1_bound = float(np.sum(3.0 * np.abs(b.values[mask]) / gaps**2))
    return GDecomposition(n, f_value, g1_at, g2_at, g1_bound)
