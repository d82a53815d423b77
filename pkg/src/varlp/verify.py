"""Experiment harness: operator-norm estimation and named bound suites.

Operator norms are certified from below only: the harness samples the unit
ball, then refines the best sample by coordinate ascent (perturb one
coordinate, renormalize, keep if improved) with proposals driven by exact
two-by-two plane maximization in the quadratic case.  Suites package the
library's bound and identity checks into deterministic, serializable
reports.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import math
import platform
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy

from . import _kernels as kernels
from .embedding import TWO_PI, cell_modular_sum, embed, g_decompose
from .exponents import ExponentSequence
from .hilbert import FiniteSection, pointwise_bound
from .multipliers import apply_multiplier, check_hypotheses, get_symbol
from .spaces import (Sequence, StepFunction, classical_norm,
                     luxemburg_from_arrays, luxemburg_norm_seq, modular_seq,
                     modular_step, sample_unit_ball)

__all__ = [
    "NormEstimate",
    "CheckRecord",
    "Report",
    "SuiteConfig",
    "SUITE_NAMES",
    "exponent_family",
    "estimate_operator_norm",
    "run_suite",
    "report_to_json_bytes",
    "report_to_csv_text",
]

SUITE_NAMES = ("lemma21", "lemma23", "remark31", "theorem13", "theorem32")


def exponent_family(spec: str, window: tuple[int, int], seed: int = 0) -> ExponentSequence:
    """Build a named exponent family on a window.

    Specs: "const:q", "alternating:a,b" (by index parity, tail a),
    "lh_decay:t" (t + 1/log(e + |n|), tail t), "random:a,b" (uniform, tail
    midpoint, deterministic in ``seed``).
    """
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("empty window")
    idx = np.arange(lo, hi + 1)
    kind, _, args = spec.partition(":")
    if kind == "const":
        return ExponentSequence.constant(float(args))
    if kind == "alternating":
        a, b = (float(s) for s in args.split(","))
        values = np.where(idx % 2 == 0, a, b)
        return ExponentSequence(lo, values, a)
    if kind == "lh_decay":
        t = float(args)
        values = t + 1.0 / np.log(math.e + np.abs(idx))
        return ExponentSequence(lo, values, t)
    if kind == "random":
        a, b = (float(s) for s in args.split(","))
        rng = np.random.default_rng([seed, 0x7fa])
        values = rng.uniform(a, b, idx.size)
        return ExponentSequence(lo, values, 0.5 * (a + b))
    raise ValueError(f"unknown exponent family {spec!r}")


@dataclass(frozen=True)
class NormEstimate:
    """Certified lower bound sup ||Hb|| / ||b|| over sampled unit vectors.

    ``witness`` reproduces ``lower_bound`` on re-evaluation; ``method``
    names the phase that produced it (basis / random / warm / ascent).
    """

    lower_bound: float
    witness: Sequence
    trials: int
    window: tuple
    method: str


def _plane_step(nb2, nAb2, bk, beta, gamma):
    """Best squared quotient over span{b, e_k} and the coordinate increment.

    Solves the 2x2 pencil max_z (z'Mz)/(z'Nz) with M the image Gram matrix
    and N the source Gram matrix; returns (mu, delta) with mu the new
    squared quotient for b + delta e_k.  Degenerate planes give (0, 0).
    """
    a = nb2 - bk * bk
    if a <= 0.0:
        return 0.0, 0.0
    bq = -(nAb2 + gamma * nb2 - 2.0 * beta * bk)
    cq = nAb2 * gamma - beta * beta
    disc = bq * bq - 4.0 * a * cq
    if disc <= 0.0:
        return 0.0, 0.0
    mu = (-bq + math.sqrt(disc)) / (2.0 * a)
    den = beta - mu * bk
    if den == 0.0:
        return mu, 0.0
    delta = (mu * nb2 - nAb2) / den
    if not math.isfinite(delta):
        return mu, 0.0
    return mu, delta


def _plane_step_vec(nb2, nAb2, bk, beta, gamma):
    """Vectorized `_plane_step` over all coordinates (ranking only)."""
    a = nb2 - bk * bk
    bq = -(nAb2 + gamma * nb2 - 2.0 * beta * bk)
    cq = nAb2 * gamma - beta * beta
    disc = np.maximum(bq * bq - 4.0 * a * cq, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(a > 0.0, (-bq + np.sqrt(disc)) / (2.0 * a), 0.0)
    return np.where(np.isfinite(mu), mu, 0.0)


def estimate_operator_norm(p: ExponentSequence, window: tuple[int, int], trials: int,
                           seed: int, *, ascent_passes: int = 100,
                           candidate_budget: int | None = None,
                           norm_tol: float = 1e-12, stall_rtol: float | None = None,
                           warm_starts=()) -> NormEstimate:
    """Lower bound for the transform's norm on the windowed unit ball.

    Samples unit vectors (basis vectors first), keeps the best quotient,
    then runs coordinate-ascent passes: each pass ranks coordinates by an
    exact quadratic plane model, perturbs one coordinate at a time by the
    model's optimum, renormalizes, and keeps improvements.  Stops after
    ``ascent_passes`` passes or when a pass stalls.  Deterministic in
    (p, window, trials, seed).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("empty window")
    n = hi - lo + 1
    section = FiniteSection((lo, hi))
    idx = np.arange(lo, hi + 1)
    exps = p.over(idx)
    p_lower = p.p_lower
    quadratic = p.is_constant and p.tail == 2.0
    const_q = p.tail if p.is_constant else None

    def norm_of(vals: np.ndarray) -> float:
        if const_q is not None:
            return classical_norm(vals, const_q)
        return luxemburg_from_arrays(np.abs(vals), exps, p_lower, norm_tol).value

    def quotient(vals: np.ndarray) -> float:
        den = norm_of(vals)
        if den == 0.0:
            return 0.0
        return norm_of(section.apply(vals)) / den

    def placed(s: Sequence) -> np.ndarray:
        vals = np.zeros(n)
        a = max(s.window_start, lo)
        b_stop = min(s.window_stop, hi + 1)
        if a < b_stop:
            vals[a - lo:b_stop - lo] = s.values[a - s.window_start:b_stop - s.window_start]
        return vals

    best_vals = None
    best_q = -1.0
    method = "basis"
    for t, s in enumerate(sample_unit_ball(p, (lo, hi), seed, trials)):
        vals = placed(s)
        qv = quotient(vals)
        if qv > best_q:
            best_q, best_vals = qv, vals
            method = "basis" if t < n else "random"
    for s in warm_starts:
        vals = placed(s)
        qv = quotient(vals)
        if qv > best_q:
            best_q, best_vals = qv, vals
            method = "warm"

    # Column squared norms of the section: sum_{j in W, j != k} (j-k)^-2.
    inv_sq = 1.0 / np.arange(1, n, dtype=np.float64) ** 2
    prefix = np.concatenate([[0.0], np.cumsum(inv_sq)])
    offsets = np.arange(n)
    colsq = prefix[n - 1 - offsets] + prefix[offsets]

    b = best_vals.copy()
    scale = norm_of(b)
    if scale > 0:
        b /= scale
    Ab = section.apply(b)

    if candidate_budget is None:
        candidate_budget = n
    if stall_rtol is None:
        # Quadratic passes are cheap (no bisections), so sweep to a much
        # tighter plateau there.
        stall_rtol = 1e-9 if quadratic else 1e-5

    improved_any = False
    if quadratic:
        nb2 = float(b @ b)
        nAb2 = float(Ab @ Ab)
        cur = nAb2 / nb2
        for _ in range(ascent_passes):
            stale = -section.apply(Ab)  # stale <Ab, A e_k> for ranking
            mus = _plane_step_vec(nb2, nAb2, b, stale, colsq)
            order = np.argsort(-mus, kind="stable")[:candidate_budget]
            pass_start = cur
            for k in order:
                col = 1.0 / np.where(idx == idx[k], np.inf, idx - idx[k])
                beta = float(Ab @ col)
                mu, delta = _plane_step(nb2, nAb2, float(b[k]), beta, float(colsq[k]))
                if mu <= cur * (1.0 + 1e-14) or delta == 0.0:
                    continue
                b[k] += delta
                Ab += delta * col
                nb2 = float(b @ b)
                nAb2 = float(Ab @ Ab)
                cur = nAb2 / nb2
                improved_any = True
            # refresh against drift from incremental updates
            Ab = section.apply(b)
            nAb2 = float(Ab @ Ab)
            cur = nAb2 / nb2
            if cur - pass_start <= stall_rtol * max(cur, 1.0):
                break
    else:
        # Search-phase norms use bracketed Brent instead of plain bisection
        # (3-4x fewer modular evaluations); the returned lower bound is
        # re-derived through the bisection norm below, so the search method
        # never leaks into reported values.
        from scipy.optimize import brentq

        def search_norm(vals: np.ndarray, hint: float | None = None) -> float:
            mags = np.abs(vals)
            m = float(mags.max()) if mags.size else 0.0
            if m == 0.0:
                return 0.0

            def excess(lam: float) -> float:
                return kernels.pow_sum(mags, exps, 1.0 / lam) - 1.0

            if hint and hint > 0:
                lam_lo, lam_hi = 0.5 * hint, 2.0 * hint
            else:
                spread = np.count_nonzero(mags) ** (1.0 / p_lower)
                lam_lo, lam_hi = m * min(1.0, 1.0 / spread), m * max(1.0, spread)
            for _ in range(200):
                if excess(lam_hi) <= 0.0:
                    break
                lam_hi *= 2.0
            for _ in range(200):
                if excess(lam_lo) >= 0.0:
                    break
                lam_lo *= 0.5
            return brentq(excess, lam_lo, lam_hi, rtol=1e-12)

        def search_quotient(img: np.ndarray, vals: np.ndarray,
                            num_hint: float | None = None,
                            den_hint: float | None = None) -> tuple[float, float, float]:
            den = search_norm(vals, den_hint)
            if den == 0.0:
                return 0.0, 0.0, 0.0
            num = search_norm(img, num_hint)
            return num / den, num, den

        cur, cur_num, cur_den = search_quotient(Ab, b)
        for _ in range(ascent_passes):
            nb2 = float(b @ b)
            nAb2 = float(Ab @ Ab)
            stale = -section.apply(Ab)
            mus = _plane_step_vec(nb2, nAb2, b, stale, colsq)
            order = np.argsort(-mus, kind="stable")[:candidate_budget]
            pass_start = cur
            for k in order:
                col = 1.0 / np.where(idx == idx[k], np.inf, idx - idx[k])
                beta = float(Ab @ col)
                _, delta = _plane_step(nb2, nAb2, float(b[k]), beta, float(colsq[k]))
                if delta == 0.0:
                    continue
                cand = b.copy()
                cand[k] += delta
                cand_img = Ab + delta * col
                qv = search_quotient(cand_img, cand)
                if qv > cur * (1.0 + 1e-12):
                    b, Ab, cur = cand, cand_img, qv
                    nb2 = float(b @ b)
                    nAb2 = float(Ab @ Ab)
                    improved_any = True
            Ab = section.apply(b)  # refresh drift from incremental images
            if cur - pass_start <= stall_rtol * max(cur, 1.0):
                break
        nrm = norm_of(b)
        if nrm > 0:
            b /= nrm

    if improved_any:
        method = "ascent"
    witness = Sequence(lo, b)
    # Final value through the actual norm routine, so witness replay agrees.
    image = Sequence(lo, section.apply(b))
    num = luxemburg_norm_seq(image, p, tol=norm_tol).value
    den = luxemburg_norm_seq(witness, p, tol=norm_tol).value
    lower = num / den if den > 0 else 0.0
    return NormEstimate(lower, witness, trials, (lo, hi), method)


@dataclass(frozen=True)
class CheckRecord:
    """One verified inequality/identity: margin = bound - observed."""

    name: str
    statement: str
    inputs_digest: str
    bound: float
    observed: float
    margin: float
    passed: bool
    note: str = ""


@dataclass
class Report:
    """Outcome of one suite run; serializes deterministically."""

    suite: str
    seed: int
    config: dict
    records: list
    passed: bool
    environment: dict
    created_at: str | None = None


@dataclass
class SuiteConfig:
    """Knobs shared by the suites; every field has a JSON-friendly type."""

    seed: int = 0
    trials: int = 24
    window: tuple = (-12, 12)
    exponents: str = "alternating:1.5,3"
    tol: float = 1e-9
    identity_tol: float = 1e-12
    x_samples: int = 200
    edge_gap: float = 1e-3
    windows: tuple = ((-64, 64), (-128, 128), (-256, 256))
    saturation_rtol: float = 0.02
    envelope_factor: float = 10.0
    grid_size: int = 512
    symbols: tuple = ("sgn", "riesz_tau:1.0")
    theorem32_exponents: str = "alternating:1.5,1.8"
    op_trials: int = 48
    ascent_passes: int = 100

    @classmethod
    def from_dict(cls, obj: dict | None) -> "SuiteConfig":
        obj = dict(obj or {})
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown suite config fields: {sorted(unknown)}")
        cfg = cls(**obj)
        cfg.window = tuple(cfg.window)
        cfg.windows = tuple(tuple(w) for w in cfg.windows)
        cfg.symbols = tuple(cfg.symbols)
        return cfg

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        d["windows"] = [list(w) for w in self.windows]
        d["symbols"] = list(self.symbols)
        return d


def _digest(obj) -> str:
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def _record(name: str, statement: str, inputs, bound: float, observed: float,
            note: str = "", slack: float = 0.0) -> CheckRecord:
    bound = float(bound)
    observed = float(observed)
    margin = bound - observed
    return CheckRecord(name, statement, _digest(inputs), bound, observed,
                       margin, margin >= -slack, note)


def _environment() -> dict:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "kernels": kernels.BACKEND,
    }


def _finish(suite: str, cfg: SuiteConfig, records: list[CheckRecord]) -> Report:
    passed = all(r.passed for r in records)
    for r in records:
        if not math.isfinite(r.margin):
            raise AssertionError(f"non-finite margin leaked into record {r.name!r}")
    return Report(suite, cfg.seed, cfg.to_dict(), records, passed, _environment(),
                  datetime.datetime.now(datetime.timezone.utc).isoformat())


def _random_sequence(rng, window: tuple[int, int]) -> Sequence:
    lo, hi = window
    return Sequence(lo, rng.uniform(-1.0, 1.0, hi - lo + 1))


def _suite_lemma21(cfg: SuiteConfig) -> Report:
    p = exponent_family(cfg.exponents, cfg.window, cfg.seed)
    budget_factor = 0.5 * TWO_PI ** p.p_bar
    worst_ball = -math.inf
    worst_budget = -math.inf
    samples = sample_unit_ball(p, cfg.window, cfg.seed, cfg.trials)
    for b in samples:
        disc = modular_seq(b, p)
        e = embed(b, p)
        cont = modular_step(e.f, e.pfun)
        worst_ball = max(worst_ball, disc - 1.0)
        worst_budget = max(worst_budget, cont - budget_factor * disc)
    inputs = {"exponents": cfg.exponents, "window": list(cfg.window),
              "seed": cfg.seed, "trials": cfg.trials}
    return _finish("lemma21", cfg, [
        _record("unit-ball-modular",
                "lattice modular of a unit-norm sequence stays <= 1",
                inputs, cfg.tol, worst_ball, slack=0.0),
        _record("embedded-modular-budget",
                "cell modular of the embedded function <= half (2 pi)^p_bar "
                "times the lattice modular",
                inputs, cfg.tol, worst_budget,
                note="checked in two-step form (budget vs lattice modular, "
                     "lattice modular vs 1); the compressed modular-vs-norm "
                     "bound follows on the unit ball"),
    ])


def _g1_lattice_sum(e, n: int, xs: np.ndarray) -> np.ndarray:
    """Defining lattice-sum form of the cell remainder (independent oracle)."""
    out = np.zeros_like(xs)
    for m, bm in zip(e.b.indices, e.b.values):
        if m == n or bm == 0.0:
            continue
        logs = np.log(np.abs((xs - m + 0.25) / (xs - m - 0.25)))
        out += 2.0 * bm * (logs - 0.5 / (n - m))
    return out


def _suite_lemma23(cfg: SuiteConfig) -> Report:
    from scipy.integrate import quad

    p = exponent_family(cfg.exponents, cfg.window, cfg.seed)
    lo, hi = cfg.window
    worst_g1 = -math.inf
    worst_g2 = -math.inf
    worst_split = -math.inf
    worst_mean = -math.inf
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, 23, t])
        b = _random_sequence(rng, cfg.window)
        e = embed(b, p)
        for n in range(lo, hi + 1):
            dec = g_decompose(e, n)
            xs = n + np.linspace(-0.5, 0.5, cfg.x_samples)
            xs = xs[np.abs(np.abs(xs - n) - 0.25) > cfg.edge_gap]
            g1 = dec.g1_at(xs)
            worst_g1 = max(worst_g1, float(np.max(np.abs(g1)) - dec.g1_bound))
            worst_split = max(worst_split, float(np.max(np.abs(
                g1 - _g1_lattice_sum(e, n, xs)))))
            inner = xs[np.abs(xs - n) <= 0.25 - cfg.edge_gap]
            if inner.size:
                g2 = dec.g2_at(inner)
                bn = abs(float(b.at(n)))
                worst_g2 = max(worst_g2, float(np.max(np.abs(g2)) - 2.0 * bn * math.log(2.0)))
        # cell mean of the log term vanishes by oddness; quadrature check on
        # the window's center cell
        n0 = (lo + hi) // 2
        dec = g_decompose(e, n0)
        val, _err = quad(lambda x: dec.g2_at(x), n0 - 0.5, n0 + 0.5,
                         points=[n0 - 0.25, n0 + 0.25], limit=200)
        worst_mean = max(worst_mean, abs(val))
    inputs = {"exponents": cfg.exponents, "window": list(cfg.window),
              "seed": cfg.seed, "trials": cfg.trials, "x_samples": cfg.x_samples}
    return _finish("lemma23", cfg, [
        _record("cell-remainder-bound",
                "|G1(x)| <= 3 sum |b_m| / |n-m|^2 on each cell",
                inputs, cfg.tol, worst_g1),
        _record("cell-remainder-split",
                "subtraction form of G1 agrees with its defining lattice sum",
                inputs, cfg.tol, worst_split),
        _record("cell-log-inner-bound",
                "|G2(x)| <= 2 |b_n| log 2 on the inner quarter region",
                inputs, cfg.tol, worst_g2,
                note="claimed on |x - n| <= 1/4 - gap only; the closed form "
                     "diverges at the cell's quarter points, so the bound's "
                     "status on the full cell is flagged, not assumed"),
        _record("cell-log-mean-zero",
                "integral of G2 over its cell vanishes by oddness",
                inputs, 1e-6, worst_mean),
    ])


def _suite_remark31(cfg: SuiteConfig) -> Report:
    worst_identity = -math.inf
    ratio_lo, ratio_hi = math.inf, -math.inf
    bound_lo, bound_hi = math.inf, -math.inf
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, 31, t])
        b = _random_sequence(rng, cfg.window)
        p = ExponentSequence(cfg.window[0],
                             rng.uniform(1.0, 4.0, b.values.size),
                             rng.uniform(1.0, 4.0))
        e = embed(b, p)
        lhs = modular_step(e.f, e.pfun)
        rhs = cell_modular_sum(b, p)
        worst_identity = max(worst_identity, abs(lhs - rhs))
        disc = modular_seq(b, p)
        if disc > 0:
            ratio = lhs / disc
            ratio_lo, ratio_hi = min(ratio_lo, ratio), max(ratio_hi, ratio)
            bound_lo = min(bound_lo, 0.5 * TWO_PI ** p.p_lower)
            bound_hi = max(bound_hi, 0.5 * TWO_PI ** p.p_bar)
    inputs = {"window": list(cfg.window), "seed": cfg.seed, "trials": cfg.trials}
    return _finish("remark31", cfg, [
        _record("cell-modular-identity",
                "integral of |f|^p equals half the sum of |2 pi b_n|^{p_n}",
                inputs, cfg.identity_tol, worst_identity),
        _record("comparability-lower",
                "continuous/discrete modular ratio >= half (2 pi)^p_lower (>= 1)",
                inputs, ratio_lo, max(bound_lo, 1.0),
                note="observed smallest ratio m1 in the bound column",
                slack=1e-12),
        _record("comparability-upper",
                "continuous/discrete modular ratio <= half (2 pi)^p_bar",
                inputs, bound_hi, ratio_hi,
                note="observed largest ratio M1 in the observed column",
                slack=1e-12),
    ])


def _suite_theorem13(cfg: SuiteConfig) -> Report:
    widest = cfg.windows[-1]
    p = exponent_family(cfg.exponents, widest, cfg.seed)
    estimates = []
    witness = None
    for w in cfg.windows:
        warm = [witness] if witness is not None else []
        est = estimate_operator_norm(p, w, cfg.op_trials, cfg.seed,
                                     ascent_passes=cfg.ascent_passes,
                                     warm_starts=warm)
        estimates.append(est)
        witness = est.witness
    bounds = [est.lower_bound for est in estimates]
    increments = [(b2 - b1) / b1 for b1, b2 in zip(bounds, bounds[1:])]
    envelope = cfg.envelope_factor * pointwise_bound(p.p_bar).constant
    inputs = {"exponents": cfg.exponents, "windows": [list(w) for w in cfg.windows],
              "seed": cfg.seed, "op_trials": cfg.op_trials}
    note = "estimates: " + ", ".join(f"{b:.6f}" for b in bounds)
    return _finish("theorem13", cfg, [
        _record("window-monotone",
                "lower bounds never decrease as the window doubles",
                inputs, cfg.tol, -min(increments) if increments else 0.0, note=note),
        _record("window-saturation",
                "relative increment per window doubling stays below threshold",
                inputs, cfg.saturation_rtol, max(increments) if increments else 0.0,
                note=note),
        _record("envelope",
                "no estimate exceeds the factor-scaled pointwise constant",
                inputs, envelope, max(bounds)),
        _record("finite",
                "all estimates are finite numbers",
                inputs, 0.5, 0.0 if all(math.isfinite(x) for x in bounds) else 1.0),
    ])


def _split_modular(g: StepFunction, p_minus: float) -> float:
    """Piecewise split bound: |g|^p_minus where |g| <= 1, |g|^2 where |g| > 1."""
    total = 0.0
    for lo, hi, v in g.pieces():
        mag = abs(v)
        if mag == 0.0:
            continue
        length = float(hi - lo)
        total += (mag ** p_minus if mag <= 1.0 else mag ** 2) * length
    return total


def _suite_theorem32(cfg: SuiteConfig) -> Report:
    p = exponent_family(cfg.theorem32_exponents, cfg.window, cfg.seed)
    pfun = embed(Sequence.zero(), p).pfun
    hyp = check_hypotheses(pfun, strict_range=True)
    records = [
        _record("exponent-hypotheses",
                "constant 1 is integrable against the companion exponent on "
                "the region where p exceeds its infimum",
                {"exponents": cfg.theorem32_exponents, "window": list(cfg.window)},
                0.5, 0.0 if hyp.satisfied else 1.0,
                note=f"p_minus={hyp.p_minus}, q={hyp.q}, |D|={hyp.d_measure}"),
    ]
    samples = sample_unit_ball(p, cfg.window, cfg.seed, cfg.trials)
    for name in cfg.symbols:
        sym = get_symbol(name)
        sup_m = sym.sup_on_grid(cfg.grid_size)
        worst_split = -math.inf
        worst_plancherel = -math.inf
        worst_modular = -math.inf
        for b in samples:
            tb = apply_multiplier(sym, b, cfg.grid_size)
            e = embed(tb, p)
            cont = modular_step(e.f, e.pfun)
            split = _split_modular(e.f, pfun.p_minus)
            worst_split = max(worst_split, cont - split)
            disc = modular_seq(tb, p)
            worst_modular = max(worst_modular, disc)
            l2_in = classical_norm(b.values, 2.0)
            l2_out = classical_norm(tb.values, 2.0)
            worst_plancherel = max(worst_plancherel, l2_out - sup_m * l2_in)
        inputs = {"symbol": name, "grid_size": cfg.grid_size,
                  "exponents": cfg.theorem32_exponents, "seed": cfg.seed}
        records.extend([
            _record(f"{name}-split-bound",
                    "cell modular of the multiplier image <= small-part "
                    "p_minus integral plus large-part square integral",
                    inputs, cfg.tol, worst_split),
            _record(f"{name}-image-modular-finite",
                    "lattice modular of the multiplier image is finite",
                    inputs, 1e6, worst_modular if math.isfinite(worst_modular) else 1e9),
            _record(f"{name}-plancherel",
                    "quadratic norm contracts by the symbol's sup",
                    inputs, cfg.tol, worst_plancherel),
        ])
    return _finish("theorem32", cfg, records)


_SUITES = {
    "lemma21": _suite_lemma21,
    "lemma23": _suite_lemma23,
    "remark31": _suite_remark31,
    "theorem13": _suite_theorem13,
    "theorem32": _suite_theorem32,
}


def run_suite(name: str, config: SuiteConfig | dict | None = None) -> Report:
    """Run one named verification suite; deterministic under (name, config)."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    cfg = config if isinstance(config, SuiteConfig) else SuiteConfig.from_dict(config)
    return _SUITES[name](cfg)


def report_to_json_bytes(report: Report, include_timestamp: bool = False) -> bytes:
    """Canonical JSON bytes; the timestamp is opt-in so reruns are byte-identical."""
    payload = {
        "suite": report.suite,
        "seed": report.seed,
        "config": report.config,
        "passed": report.passed,
        "environment": report.environment,
        "records": [asdict(r) for r in report.records],
    }
    if include_timestamp:
        payload["created_at"] = report.created_at
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()


def report_to_csv_text(report: Report) -> str:
    """One row per check, for external plotting."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "seed", "name", "bound", "observed", "margin",
                     "passed", "inputs_digest", "note"])
    for r in report.records:
        writer.writerow([report.suite, report.seed, r.name, repr(r.bound),
                         repr(r.observed), repr(r.margin), r.passed,
                         r.inputs_digest, r.note])
    return buf.getvalue()
