"""Variable exponents on the integer lattice and on the real line.

``ExponentSequence`` holds finitely many exponents plus a constant tail, so
lattice-wide quantities reduce to window computations.  ``ExponentFunction``
is the piecewise-constant real-line counterpart produced by the embedding,
together with the two log-regularity checks (local and at infinity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ExponentSequence",
    "ExponentFunction",
    "LogHolderReport",
    "conjugate",
    "p_bar",
    "p_lower",
    "check_log_holder",
]


def _validate_exponent(value: float, where: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{where} must be finite, got {value!r}")
    if value < 1.0:
        raise ValueError(f"{where} must be at least 1, got {value!r}")
    return value


@dataclass(frozen=True)
class ExponentSequence:
    """Exponents p_n on a finite index window with a constant tail.

    Every entry and the tail must lie in [1, inf); infinite exponents are
    rejected.  The tail applies to all indices outside the window.
    """

    window_start: int
    values: np.ndarray
    tail: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("exponent values must be one-dimensional")
        for v in values:
            _validate_exponent(v, "exponent value")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tail", _validate_exponent(self.tail, "tail exponent"))
        object.__setattr__(self, "window_start", int(self.window_start))
        values.flags.writeable = False

    @classmethod
    def constant(cls, q: float) -> "ExponentSequence":
        return cls(0, np.empty(0), q)

    @property
    def window_stop(self) -> int:
        """One past the last explicit index."""
        return self.window_start + self.values.size

    @property
    def p_bar(self) -> float:
        if self.values.size == 0:
            return self.tail
        return max(float(self.values.max()), self.tail)

    @property
    def p_lower(self) -> float:
        if self.values.size == 0:
            return self.tail
        return min(float(self.values.min()), self.tail)

    @property
    def is_constant(self) -> bool:
        return self.values.size == 0 or (
            float(self.values.min()) == float(self.values.max()) == self.tail
        )

    def at(self, n: int) -> float:
        if self.window_start <= n < self.window_stop:
            return float(self.values[n - self.window_start])
        return self.tail

    def over(self, indices) -> np.ndarray:
        """Exponents aligned with ``indices``, tail outside the window."""
        indices = np.asarray(indices, dtype=np.int64)
        out = np.full(indices.shape, self.tail, dtype=np.float64)
        inside = (indices >= self.window_start) & (indices < self.window_stop)
        out[inside] = self.values[indices[inside] - self.window_start]
        return out

    def to_json_obj(self) -> dict:
        return {
            "window_start": self.window_start,
            "values": [float(v) for v in self.values],
            "tail": self.tail,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExponentSequence":
        try:
            return cls(obj["window_start"], np.asarray(obj["values"], dtype=np.float64),
                       obj["tail"])
        except KeyError as exc:
            raise ValueError(f"exponent object is missing field {exc.args[0]!r}") from exc


def p_bar(e: ExponentSequence) -> float:
    """Largest exponent over the whole lattice (window entries and tail)."""
    return e.p_bar


def p_lower(e: ExponentSequence) -> float:
    """Smallest exponent over the whole lattice."""
    return e.p_lower


def conjugate(p: float) -> float:
    """The dual exponent p' with 1/p + 1/p' = 1.  Requires p in (1, inf)."""
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise ValueError(f"conjugate exponent requires p in (1, inf), got {p!r}")
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentFunction:
    """Piecewise-constant exponent on the real line.

    ``pieces[i]`` is the value on [breakpoints[i-1], breakpoints[i]) with the
    obvious unbounded first and last intervals, so ``len(pieces)`` is
    ``len(breakpoints) + 1``.  Intervals are half-open on the right.
    """

    breakpoints: np.ndarray
    pieces: np.ndarray
    description: str = ""

    def __post_init__(self):
        breakpoints = np.asarray(self.breakpoints, dtype=np.float64)
        pieces = np.asarray(self.pieces, dtype=np.float64)
        if pieces.size == 0:
            raise ValueError("exponent function needs at least one piece")
        if pieces.size != breakpoints.size + 1:
            raise ValueError("need exactly one piece per interval "
                             f"({breakpoints.size + 1}), got {pieces.size}")
        if breakpoints.size and np.any(np.diff(breakpoints) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        for v in pieces:
            _validate_exponent(v, "exponent piece")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "pieces", pieces)
        breakpoints.flags.writeable = False
        pieces.flags.writeable = False

    @classmethod
    def constant(cls, q: float, description: str = "") -> "ExponentFunction":
        return cls(np.empty(0), np.asarray([q]), description)

    @property
    def p_minus(self) -> float:
        return float(self.pieces.min())

    @property
    def p_plus(self) -> float:
        return float(self.pieces.max())

    @property
    def p_inf(self) -> float:
        """Value on the unbounded right piece (the tail value)."""
        return float(self.pieces[-1])

    def at(self, x) -> np.ndarray | float:
        idx = np.searchsorted(self.breakpoints, np.asarray(x, dtype=np.float64),
                              side="right")
        out = self.pieces[idx]
        return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out

    def intervals(self):
        """Yield (lo, hi, value) with infinite first/last endpoints."""
        edges = [-math.inf, *self.breakpoints.tolist(), math.inf]
        for i, value in enumerate(self.pieces):
            yield edges[i], edges[i + 1], float(value)

    def jumps(self):
        """Breakpoints where adjacent piece values actually differ."""
        return [
            (float(bp), float(self.pieces[i]), float(self.pieces[i + 1]))
            for i, bp in enumerate(self.breakpoints)
            if self.pieces[i] != self.pieces[i + 1]
        ]


@dataclass(frozen=True)
class LogHolderReport:
    """Outcome of the two log-regularity checks on an exponent function.

    ``c0``/``c_inf`` are the smallest constants making the local and
    at-infinity inequalities hold on the sample (infinite when the check
    fails structurally).  ``witness`` is the pair (x, y) at a defeating jump,
    or the single x achieving the worst at-infinity ratio.
    """

    c0: float
    c_inf: float
    p_inf: float
    passed_local: bool
    passed_infinity: bool
    witness: tuple | float | None = None


def check_log_holder(p: ExponentFunction, samples_per_piece: int = 16) -> LogHolderReport:
    """Check local and at-infinity log-regularity of a piecewise-constant exponent.

    Local failure is decided structurally: any genuine jump makes the local
    modulus-of-continuity ratio unbounded as the pair of points closes in on
    the breakpoint, which no sample could certify.  In the passing case the
    function is constant and the local constant is 0.  The at-infinity
    constant is estimated by sampling each bounded piece at
    ``samples_per_piece`` midpoints; an unbounded piece whose value differs
    from the tail value defeats the check outright.
    """
    if p.pieces.size == 0:
        raise ValueError("empty piece list")
    if samples_per_piece < 1:
        raise ValueError("samples_per_piece must be >= 1")

    jumps = p.jumps()
    if jumps:
        bp = jumps[0][0]
        passed_local, c0 = False, math.inf
        witness_local = (bp, bp)
    else:
        passed_local, c0 = True, 0.0
        witness_local = None

    p_inf = p.p_inf
    # Left-unbounded piece with a different value: the right-hand side of the
    # at-infinity inequality decays to zero along that piece, so no finite
    # constant works.
    if float(p.pieces[0]) != p_inf:
        anchor = float(p.breakpoints[0]) - 1.0 if p.breakpoints.size else -1.0
        return LogHolderReport(c0, math.inf, p_inf, passed_local, False,
                               witness_local if not passed_local else anchor)

    c_inf = 0.0
    witness_inf = None
    for i in range(1, p.pieces.size - 1):
        value = float(p.pieces[i])
        if value == p_inf:
            continue
        lo = float(p.breakpoints[i - 1])
        hi = float(p.breakpoints[i])
        xs = lo + (np.arange(samples_per_piece) + 0.5) * (hi - lo) / samples_per_piece
        ratios = abs(value - p_inf) * np.log(math.e + np.abs(xs))
        k = int(np.argmax(ratios))
        if ratios[k] > c_inf:
            c_inf = float(ratios[k])
            witness_inf = float(xs[k])

    witness = witness_local if not passed_local else witness_inf
    return LogHolderReport(c0, c_inf, p_inf, passed_local, True, witness)
