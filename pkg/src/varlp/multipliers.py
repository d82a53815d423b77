"""Fourier multipliers on sequences, realized spectrally on the frequency circle.

A symbol m on [-1/2, 1/2) acts by multiplying the sequence's transform.  The
grid realization samples m at the midpoints of a uniform dyadic grid (so an
odd symbol never sees the origin) and uses modulated FFTs; the half-sample
offset also makes the aliasing series of rough symbols alternate, which is
what keeps the error O(1/grid_size).  Symbols that are trigonometric
polynomials carry their exact coefficients and are applied by exact shifts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .exponents import ExponentFunction
from .spaces import Sequence

__all__ = [
    "Symbol",
    "MikhlinReport",
    "MultiplierHypotheses",
    "get_symbol",
    "apply_multiplier",
    "mikhlin_check",
    "check_hypotheses",
    "reflected_symbol",
    "product_symbol",
]


@dataclass(frozen=True)
class Symbol:
    """A multiplier symbol: evaluator, optional analytic derivatives, and flags.

    ``trig_coeffs`` holds the exact transform coefficients when the symbol
    is a trigonometric polynomial (degree -> coefficient); ``on_line_mikhlin``
    records the known verdict of the derivative condition on the whole real
    line (None = unknown), and ``weak_type_11`` is the assumed weak-(1,1)
    property, carried as a flag and never verified numerically.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray, int], np.ndarray] | None = None
    trig_coeffs: dict | None = None
    bound_hint: float | None = None
    on_line_mikhlin: bool | None = None
    weak_type_11: bool = False

    def sup_on_grid(self, grid_size: int) -> float:
        return float(np.max(np.abs(self.evaluate(_grid(grid_size)))))


def _grid(n: int) -> np.ndarray:
    """Midpoint frequency grid on [-1/2, 1/2): never contains 0."""
    return -0.5 + (np.arange(n) + 0.5) / n


def _zeros_like(xs: np.ndarray, order: int) -> np.ndarray:
    return np.zeros_like(xs, dtype=np.complex128)


def _make_one() -> Symbol:
    return Symbol(
        name="one",
        evaluate=lambda xi: np.ones_like(xi, dtype=np.complex128),
        derivative=lambda xs, order: _zeros_like(xs, order),
        trig_coeffs={0: 1.0},
        bound_hint=1.0,
        on_line_mikhlin=True,
        weak_type_11=True,
    )


def _make_shift() -> Symbol:
    def ev(xi):
        return np.exp(-2j * np.pi * np.asarray(xi))

    def deriv(xs, order):
        return (-2j * np.pi) ** order * ev(xs)

    return Symbol(
        name="shift",
        evaluate=ev,
        derivative=deriv,
        trig_coeffs={1: 1.0},
        bound_hint=1.0,
        # Derivatives do not decay, so the weighted derivative condition
        # fails on the full line even though |m| = 1.
        on_line_mikhlin=False,
        weak_type_11=True,
    )


def _make_sgn() -> Symbol:
    return Symbol(
        name="sgn",
        evaluate=lambda xi: -1j * np.sign(np.asarray(xi)).astype(np.complex128),
        derivative=lambda xs, order: _zeros_like(xs, order),
        bound_hint=1.0,
        on_line_mikhlin=True,
        weak_type_11=True,
    )


def _make_linear() -> Symbol:
    def deriv(xs, order):
        if order == 1:
            return np.ones_like(xs, dtype=np.complex128)
        return _zeros_like(xs, order)

    return Symbol(
        name="linear",
        evaluate=lambda xi: np.asarray(xi, dtype=np.complex128),
        derivative=deriv,
        on_line_mikhlin=False,  # |m| itself is unbounded on the line
        weak_type_11=False,
    )


def _make_riesz(tau: float) -> Symbol:
    def ev(xi):
        xi = np.asarray(xi, dtype=np.float64)
        out = np.ones_like(xi, dtype=np.complex128)
        nz = xi != 0
        out[nz] = np.exp(1j * tau * np.log(np.abs(xi[nz])))
        return out

    def deriv(xs, order):
        xs = np.asarray(xs, dtype=np.float64)
        coef = 1.0 + 0.0j
        for j in range(order):
            coef *= 1j * tau - j
        return coef * ev(xs) / xs.astype(np.complex128) ** order

    return Symbol(
        name=f"riesz_tau:{tau}",
        evaluate=ev,
        derivative=deriv,
        bound_hint=1.0,
        on_line_mikhlin=True,
        weak_type_11=True,
    )


def _make_grid_symbol(name: str, xi: np.ndarray, values: np.ndarray) -> Symbol:
    order = np.argsort(xi)
    xi = np.asarray(xi, dtype=np.float64)[order]
    values = np.asarray(values, dtype=np.complex128)[order]

    def ev(x):
        x = np.asarray(x, dtype=np.float64)
        return np.interp(x, xi, values.real) + 1j * np.interp(x, xi, values.imag)

    return Symbol(name=name, evaluate=ev)


def load_grid_symbol(path) -> Symbol:
    """Read a sampled symbol from a JSON array of [xi, re, im] rows."""
    rows = json.loads(Path(path).read_text())
    try:
        xi = np.asarray([r[0] for r in rows], dtype=np.float64)
        values = np.asarray([complex(r[1], r[2]) for r in rows])
    except (TypeError, IndexError) as exc:
        raise ValueError(f"grid symbol file {path} must hold [xi, re, im] rows") from exc
    if xi.size < 2:
        raise ValueError("grid symbol needs at least two samples")
    return _make_grid_symbol(f"grid:{path}", xi, values)


def get_symbol(spec: str) -> Symbol:
    """Resolve a registry name: one, shift, sgn, linear, riesz_tau:<t>, grid:<path>."""
    if spec == "one":
        return _make_one()
    if spec == "shift":
        return _make_shift()
    if spec == "sgn":
        return _make_sgn()
    if spec == "linear":
        return _make_linear()
    if spec.startswith("riesz_tau:"):
        return _make_riesz(float(spec.split(":", 1)[1]))
    if spec.startswith("grid:"):
        return load_grid_symbol(spec.split(":", 1)[1])
    raise ValueError(f"unknown symbol {spec!r}")


def reflected_symbol(m: Symbol) -> Symbol:
    """The symbol xi -> m(-xi); adjoint partner under the bilinear pairing."""
    coeffs = None
    if m.trig_coeffs is not None:
        coeffs = {-d: c for d, c in m.trig_coeffs.items()}
    return replace(m, name=f"reflect({m.name})",
                   evaluate=lambda xi, _ev=m.evaluate: _ev(-np.asarray(xi)),
                   derivative=None, trig_coeffs=coeffs)


def product_symbol(m1: Symbol, m2: Symbol) -> Symbol:
    """Pointwise product of two symbols (coefficients convolve when exact)."""
    coeffs = None
    if m1.trig_coeffs is not None and m2.trig_coeffs is not None:
        coeffs = {}
        for d1, c1 in m1.trig_coeffs.items():
            for d2, c2 in m2.trig_coeffs.items():
                coeffs[d1 + d2] = coeffs.get(d1 + d2, 0.0) + c1 * c2
    return Symbol(
        name=f"{m1.name}*{m2.name}",
        evaluate=lambda xi: m1.evaluate(xi) * m2.evaluate(xi),
        trig_coeffs=coeffs,
    )


def _apply_exact(coeffs: dict, b: Sequence, out_lo: int, n_out: int) -> Sequence:
    items = sorted(coeffs.items())
    complex_out = b.is_complex or any(complex(c).imag != 0.0 for _, c in items)
    out = np.zeros(n_out, dtype=np.complex128 if complex_out else np.float64)
    for d, c in items:
        if c == 0:
            continue
        offset = b.window_start + d - out_lo
        coef = complex(c) if complex_out else float(c)
        out[offset:offset + b.values.size] += coef * b.values
    return Sequence(out_lo, out)


def apply_multiplier(m: Symbol, b: Sequence, grid_size: int) -> Sequence:
    """Apply a multiplier spectrally on a dyadic midpoint grid.

    The output window is the input window padded symmetrically out to the
    grid size.  Results are exact for trigonometric-polynomial symbols whose
    degree fits the margin; otherwise the grid sampling of the symbol is the
    only error source.
    """
    grid_size = int(grid_size)
    if grid_size < 2 or grid_size & (grid_size - 1):
        raise ValueError("grid_size must be a power of two, at least 2")
    n_in = b.values.size
    if n_in == 0:
        return Sequence.zero()
    if grid_size < 2 * n_in:
        raise ValueError(
            f"grid_size {grid_size} too small for window length {n_in}; need >= {2 * n_in}")

    margin = (grid_size - n_in) // 2
    out_lo = b.window_start - margin
    n_out = n_in + 2 * margin

    if m.trig_coeffs is not None:
        max_deg = max((abs(d) for d in m.trig_coeffs), default=0)
        if max_deg <= margin and max_deg < grid_size // 2:
            return _apply_exact(m.trig_coeffs, b, out_lo, n_out)

    samples = np.asarray(m.evaluate(_grid(grid_size)), dtype=np.complex128)
    if samples.shape != (grid_size,):
        raise ValueError("symbol evaluator must return one sample per grid point")
    if not np.all(np.isfinite(samples)):
        raise ValueError("unbounded symbol samples on the grid")

    N = grid_size
    c = 0.5 - N / 2.0
    in_idx = b.indices
    placed = np.zeros(N, dtype=np.complex128)
    placed[np.mod(in_idx, N)] = b.values * np.exp(-2j * np.pi * in_idx * c / N)
    spectrum = samples * np.fft.fft(placed)
    inverse = np.fft.ifft(spectrum)
    out_idx = np.arange(out_lo, out_lo + n_out)
    out = inverse[np.mod(out_idx, N)] * np.exp(2j * np.pi * out_idx * c / N)
    return Sequence(out_lo, out)


@dataclass(frozen=True)
class MikhlinReport:
    """Sampled suprema of |xi|^k |d^k m(xi)| for k = 0..3 against a bound.

    ``domain_limited`` marks a symbol that passes on the compact sampled
    window but is known to violate the condition on the full line.
    """

    max_ratio_per_order: tuple
    passed: bool
    worst_xi: float | None
    bound: float
    domain_limited: bool = False
    note: str = ""


def _fd_derivative(ev, xs: np.ndarray, order: int, h: np.ndarray) -> np.ndarray:
    if order == 1:
        return (ev(xs + h) - ev(xs - h)) / (2.0 * h)
    if order == 2:
        return (ev(xs + h) - 2.0 * ev(xs) + ev(xs - h)) / h**2
    if order == 3:
        return (ev(xs + 2 * h) - 2.0 * ev(xs + h)
                + 2.0 * ev(xs - h) - ev(xs - 2 * h)) / (2.0 * h**3)
    raise ValueError(f"unsupported derivative order {order}")


def mikhlin_check(m: Symbol, bound: float, n_points: int = 2048,
                  xi_min: float = 1e-6) -> MikhlinReport:
    """Check the weighted derivative condition up to order 3 on a log grid.

    The origin is excluded; the grid is geometric in |xi| on both sides so
    the small-frequency weight is actually exercised.  Derivatives use the
    symbol's analytic formulas when present, otherwise central differences
    with a step shrinking proportionally to |xi|.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    pos = np.geomspace(xi_min, 0.5, n_points)
    pos[-1] = 0.5 * (1.0 - 1e-9)  # stay inside the half-open domain
    xs = np.concatenate([-np.geomspace(xi_min, 0.5, n_points)[::-1], pos])

    sups = []
    worst_xi = None
    worst_ratio = -1.0
    note = ""
    failed_nonfinite = False
    for order in range(4):
        if order == 0:
            deriv = np.asarray(m.evaluate(xs), dtype=np.complex128)
        elif m.derivative is not None:
            deriv = np.asarray(m.derivative(xs, order), dtype=np.complex128)
        else:
            h = np.minimum(1e-4, np.abs(xs) / 8.0)
            deriv = _fd_derivative(lambda t: np.asarray(m.evaluate(t), dtype=np.complex128),
                                   xs, order, h)
        ratios = np.abs(xs) ** order * np.abs(deriv)
        if not np.all(np.isfinite(ratios)):
            k = int(np.argmax(~np.isfinite(ratios)))
            sups.append(math.inf)
            worst_xi = float(xs[k])
            note = f"non-finite derivative estimate at order {order}"
            failed_nonfinite = True
            continue
        k = int(np.argmax(ratios))
        sups.append(float(ratios[k]))
        if ratios[k] > worst_ratio:
            worst_ratio = float(ratios[k])
            worst_xi = float(xs[k])

    passed = (not failed_nonfinite) and all(s < bound for s in sups)
    domain_limited = bool(passed and m.on_line_mikhlin is False)
    if domain_limited:
        note = ("holds on the sampled compact frequency window only; "
                "known to fail on the full line")
    return MikhlinReport(tuple(sups), passed, worst_xi, float(bound),
                         domain_limited, note)


@dataclass(frozen=True)
class MultiplierHypotheses:
    """Side conditions for multiplier boundedness derived from the exponent.

    ``q`` solves 1/p_minus + 1/q = 3/2.  ``satisfied`` records whether the
    constant function 1 has finite modular on the region D where the
    exponent exceeds its essential infimum (equivalently: D has finite
    measure, since the companion exponent r is finite there).
    """

    p_minus: float
    q: float
    r_description: str
    satisfied: bool
    d_measure: float
    witness: tuple = ()


def check_hypotheses(p: ExponentFunction, strict_range: bool = False) -> MultiplierHypotheses:
    """Evaluate the exponent-side hypotheses on a piecewise-constant exponent.

    The region D = {x : p(x) > p_minus} is a finite union of pieces, so its
    measure is decided exactly from the piece list.  ``strict_range``
    additionally demands 1 < p_minus and p_plus <= 2 (with p_minus < 2).
    """
    p_minus = p.p_minus
    p_plus = p.p_plus
    if strict_range:
        if p_minus <= 1.0:
            raise ValueError(f"range check requires p_minus > 1, got {p_minus}")
        if p_minus >= 2.0 or p_plus > 2.0:
            raise ValueError(
                f"range check requires 1 < p_minus < 2 and p_plus <= 2, "
                f"got p_minus={p_minus}, p_plus={p_plus}")

    q = 1.0 / (1.5 - 1.0 / p_minus)
    measure = 0.0
    witness = []
    for lo, hi, value in p.intervals():
        if value > p_minus:
            length = hi - lo
            if math.isinf(length):
                measure = math.inf
                witness.append((lo, hi, value))
            elif math.isfinite(measure):
                measure += length
    satisfied = math.isfinite(measure)
    r_desc = ("companion exponent r(x) with 1/p_minus = 1/p(x) + 1/r(x) on "
              f"D = {{p > {p_minus}}}; modular of 1 on D equals |D| = {measure}")
    return MultiplierHypotheses(p_minus, q, r_desc, satisfied, measure,
                                tuple(witness))
