"""Sequences, step functions, their modulars, and Luxemburg norms.

The norm of the discrete space is inf{lam > 0 : sum |b_n/lam|^{p_n} <= 1};
the continuous counterpart integrates |g(x)/lam|^{p(x)}.  Both are computed
by bracketing the monotone map lam -> modular(b/lam) and bisecting, which is
robust for exponents arbitrarily close to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as kernels
from .exponents import ExponentFunction, ExponentSequence

__all__ = [
    "Sequence",
    "StepFunction",
    "NormResult",
    "modular_seq",
    "luxemburg_norm_seq",
    "luxemburg_from_arrays",
    "modular_step",
    "luxemburg_norm_step",
    "sample_unit_ball",
    "classical_norm",
]

_MAX_ITER = 200


@dataclass(frozen=True)
class Sequence:
    """Finitely supported two-sided sequence: values on a window, zero outside."""

    window_start: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1:
            raise ValueError("sequence values must be one-dimensional")
        if np.iscomplexobj(values):
            values = values.astype(np.complex128)
        else:
            values = values.astype(np.float64)
        if values.size and not np.all(np.isfinite(values)):
            raise ValueError("sequence values must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "window_start", int(self.window_start))
        values.flags.writeable = False

    @classmethod
    def zero(cls) -> "Sequence":
        return cls(0, np.empty(0))

    @classmethod
    def basis(cls, n: int) -> "Sequence":
        return cls(n, np.asarray([1.0]))

    @property
    def window_stop(self) -> int:
        return self.window_start + self.values.size

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.window_start, self.window_stop)

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0 or not np.any(self.values)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def at(self, n: int):
        if self.window_start <= n < self.window_stop:
            return self.values[n - self.window_start]
        return 0.0

    def shifted(self, k: int) -> "Sequence":
        return Sequence(self.window_start + k, self.values)

    def to_json_obj(self) -> dict:
        if self.is_complex:
            values = [[float(v.real), float(v.imag)] for v in self.values]
        else:
            values = [float(v) for v in self.values]
        return {"window_start": self.window_start, "values": values}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Sequence":
        try:
            raw = obj["values"]
            start = obj["window_start"]
        except KeyError as exc:
            raise ValueError(f"sequence object is missing field {exc.args[0]!r}") from exc
        if raw and isinstance(raw[0], (list, tuple)):
            values = np.asarray([complex(re, im) for re, im in raw])
        else:
            values = np.asarray(raw, dtype=np.float64)
        return cls(start, values)


def classical_norm(values, q: float) -> float:
    """Constant-exponent norm (sum |v|^q)^(1/q)."""
    mags = np.abs(np.asarray(values))
    if mags.size == 0:
        return 0.0
    return float(np.sum(mags**q) ** (1.0 / q))


_QUARTER = Fraction(1, 4)


def _as_quarter_fraction(x) -> Fraction:
    f = Fraction(x)
    if 4 % f.denominator != 0:
        raise ValueError(f"breakpoint {x!r} is not on the quarter-integer grid")
    return f


@dataclass(frozen=True)
class StepFunction:
    """Compactly supported piecewise-constant function on the quarter grid.

    ``values[i]`` is the value on [breakpoints[i], breakpoints[i+1]); the
    function vanishes outside [breakpoints[0], breakpoints[-1]].  Breakpoints
    are exact rationals with denominator dividing 4.
    """

    breakpoints: tuple
    values: np.ndarray

    def __post_init__(self):
        breakpoints = tuple(_as_quarter_fraction(b) for b in self.breakpoints)
        values = np.asarray(self.values)
        if np.iscomplexobj(values):
            values = values.astype(np.complex128)
        else:
            values = values.astype(np.float64)
        if breakpoints:
            if len(breakpoints) < 2:
                raise ValueError("a nonempty step function needs >= 2 breakpoints")
            if any(b >= c for b, c in zip(breakpoints, breakpoints[1:])):
                raise ValueError("breakpoints must be strictly increasing")
        if values.size != max(0, len(breakpoints) - 1):
            raise ValueError("need exactly one value per interval")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)
        values.flags.writeable = False

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls((), np.empty(0))

    @classmethod
    def from_pieces(cls, pieces) -> "StepFunction":
        """Build from (lo, hi, value) triples; pieces must tile contiguously."""
        pieces = sorted(
            ((_as_quarter_fraction(lo), _as_quarter_fraction(hi), v) for lo, hi, v in pieces),
            key=lambda t: t[0],
        )
        if not pieces:
            return cls.zero()
        breaks = [pieces[0][0]]
        values = []
        for lo, hi, v in pieces:
            if lo != breaks[-1]:
                raise ValueError("pieces must tile an interval without gaps")
            if hi <= lo:
                raise ValueError("pieces must have positive length")
            breaks.append(hi)
            values.append(v)
        return cls(tuple(breaks), np.asarray(values))

    @classmethod
    def constant_on(cls, lo, hi, value) -> "StepFunction":
        return cls.from_pieces([(lo, hi, value)])

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0 or not np.any(self.values)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def pieces(self):
        """Yield (lo, hi, value) as exact fractions."""
        for i, v in enumerate(self.values):
            yield self.breakpoints[i], self.breakpoints[i + 1], v

    def at(self, x):
        if not self.breakpoints:
            return 0.0
        edges = [float(b) for b in self.breakpoints]
        if x < edges[0] or x >= edges[-1]:
            return 0.0
        i = int(np.searchsorted(edges, x, side="right")) - 1
        return self.values[i]

    def edge_floats(self) -> np.ndarray:
        return np.asarray([float(b) for b in self.breakpoints])

    def to_json_obj(self) -> dict:
        if self.is_complex:
            values = [[float(v.real), float(v.imag)] for v in self.values]
        else:
            values = [float(v) for v in self.values]
        return {"breakpoints": [str(b) for b in self.breakpoints], "values": values}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "StepFunction":
        try:
            breaks = [Fraction(s) for s in obj["breakpoints"]]
            raw = obj["values"]
        except KeyError as exc:
            raise ValueError(f"step function object is missing field {exc.args[0]!r}") from exc
        if raw and isinstance(raw[0], (list, tuple)):
            values = np.asarray([complex(re, im) for re, im in raw])
        else:
            values = np.asarray(raw, dtype=np.float64)
        return cls(tuple(breaks), values)


@dataclass(frozen=True)
class NormResult:
    """Norm value with convergence diagnostics from the bisection."""

    value: float
    modular_at_value: float
    iterations: int
    tolerance_met: bool


def modular_seq(b: Sequence, p: ExponentSequence) -> float:
    """sum |b_n|^{p_n} over the support of b (exponents via window lookup)."""
    if b.values.size == 0:
        return 0.0
    mags = np.abs(b.values)
    exps = p.over(b.indices)
    return float(kernels.pow_sum(mags, exps, 1.0))


def _bisect_norm(rho, lam_lo: float, lam_hi: float, tol: float) -> NormResult:
    """Bisect the decreasing map lam -> rho(1/lam) to rho ~= 1.

    ``lam_lo``/``lam_hi`` are hints; they are widened by doubling/halving
    until they actually bracket.  Stops when |rho - 1| <= tol or the interval
    collapses to floating-point resolution.
    """
    iterations = 0
    for _ in range(_MAX_ITER):
        if rho(1.0 / lam_hi) <= 1.0:
            break
        lam_hi *= 2.0
        iterations += 1
    for _ in range(_MAX_ITER):
        if rho(1.0 / lam_lo) >= 1.0:
            break
        lam_lo *= 0.5
        iterations += 1

    mid = 0.5 * (lam_lo + lam_hi)
    r = rho(1.0 / mid)
    for _ in range(_MAX_ITER):
        iterations += 1
        if abs(r - 1.0) <= tol:
            return NormResult(mid, r, iterations, True)
        if lam_hi - lam_lo <= 4.0 * np.finfo(float).eps * mid:
            break
        if r > 1.0:
            lam_lo = mid
        else:
            lam_hi = mid
        mid = 0.5 * (lam_lo + lam_hi)
        r = rho(1.0 / mid)
    return NormResult(mid, r, iterations, abs(r - 1.0) <= tol)


def luxemburg_from_arrays(mags: np.ndarray, exps: np.ndarray, p_lower: float,
                          tol: float) -> NormResult:
    """Array-level Luxemburg norm: mags are |b_n| aligned with exponents.

    The initial bracket [max|b| * N^(-1/p_lower), max|b| * N^(1/p_lower)]
    (N = support size) provably straddles the solution; doubling/halving
    covers any slack.
    """
    m = float(mags.max()) if mags.size else 0.0
    if m == 0.0:
        return NormResult(0.0, 0.0, 0, True)
    n_supp = int(np.count_nonzero(mags))
    spread = n_supp ** (1.0 / p_lower)
    lam_lo = m * min(1.0, 1.0 / spread)
    lam_hi = m * max(1.0, spread)

    def rho(inv_lam: float) -> float:
        return kernels.pow_sum(mags, exps, inv_lam)

    return _bisect_norm(rho, lam_lo, lam_hi, tol)


def luxemburg_norm_seq(b: Sequence, p: ExponentSequence, tol: float = 1e-10) -> NormResult:
    """Norm of a sequence: the lam making the modular of b/lam equal to 1."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if b.is_zero:
        return NormResult(0.0, 0.0, 0, True)
    mags = np.ascontiguousarray(np.abs(b.values))
    exps = p.over(b.indices)
    return luxemburg_from_arrays(mags, exps, p.p_lower, tol)


def _refined_cells(g: StepFunction, p: ExponentFunction):
    """Common refinement of g's pieces with p's breakpoints.

    Returns (mags, exps, lengths) arrays over cells within g's support; each
    cell carries a constant |g| and a constant exponent, so the modular is a
    finite sum with no quadrature error.
    """
    if not g.breakpoints:
        return (np.empty(0), np.empty(0), np.empty(0))
    cuts = set(g.breakpoints)
    lo, hi = g.breakpoints[0], g.breakpoints[-1]
    for x in p.breakpoints:
        fx = Fraction(float(x))
        if lo < fx < hi:
            cuts.add(fx)
    edges = sorted(cuts)
    g_edges = [float(b) for b in g.breakpoints]
    mags, exps, lengths = [], [], []
    for a, b_edge in zip(edges, edges[1:]):
        af = float(a)
        gi = int(np.searchsorted(g_edges, af, side="right")) - 1
        value = g.values[gi]
        mags.append(abs(value))
        exps.append(p.at(af))
        lengths.append(float(b_edge - a))
    return (np.asarray(mags, dtype=np.float64),
            np.asarray(exps, dtype=np.float64),
            np.asarray(lengths, dtype=np.float64))


def modular_step(g: StepFunction, p: ExponentFunction) -> float:
    """Integral of |g(x)|^{p(x)}, exact on the common refinement.

    Uses exactly-rounded summation so closed-form identities against the
    defining cell sums hold to the last bit.
    """
    mags, exps, lengths = _refined_cells(g, p)
    return math.fsum(
        pow(m, q) * length for m, q, length in zip(mags, exps, lengths) if m != 0.0
    )


def luxemburg_norm_step(g: StepFunction, p: ExponentFunction, tol: float = 1e-10) -> NormResult:
    """Norm of a step function under a piecewise-constant exponent."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if g.is_zero:
        return NormResult(0.0, 0.0, 0, True)

    mags, exps, lengths = _refined_cells(g, p)
    keep = mags != 0.0
    mags, exps, lengths = mags[keep], exps[keep], lengths[keep]
    m = float(mags.max())
    total_len = float(lengths.sum())
    spread = max(1.0, total_len) ** (1.0 / p.p_minus)
    lam_lo = m * min(1.0, total_len) ** (1.0 / p.p_minus)
    lam_hi = m * spread

    def rho(inv_lam: float) -> float:
        return kernels.pow_sum_weighted(mags, exps, lengths, inv_lam)

    return _bisect_norm(rho, lam_lo, lam_hi, tol)


def sample_unit_ball(p: ExponentSequence, window: tuple[int, int], seed: int,
                     count: int) -> list[Sequence]:
    """Deterministic unit-norm samples on a window.

    The first min(count, window size) samples are the basis vectors (norm
    exactly 1 for any exponent); the rest are uniform draws rescaled to unit
    norm.  Output depends only on (p, window, seed, count).
    """
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("empty window")
    if count < 1:
        raise ValueError("count must be >= 1")
    size = hi - lo + 1
    samples: list[Sequence] = []
    for n in range(lo, min(lo + count, hi + 1)):
        samples.append(Sequence.basis(n))
    for t in range(len(samples), count):
        rng = np.random.default_rng([seed, t])
        raw = rng.uniform(-1.0, 1.0, size)
        b = Sequence(lo, raw)
        lam = luxemburg_norm_seq(b, p, tol=1e-12).value
        if lam == 0.0:
            samples.append(Sequence.basis(lo))
            continue
        samples.append(Sequence(lo, raw / lam))
    return samples
