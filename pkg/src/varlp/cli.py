"""Command-line front end.

Subcommands: norm, hilbert, multiplier, mikhlin, verify, sweep.  Scalars can
come from a JSON config file (--config); explicit flags override config
values.  Outputs are canonical JSON (or flattened CSV) and byte-stable under
a fixed seed and config.

Exit codes: 0 success (and, for verify, all checks passed); 1 checks failed;
2 usage/parse errors; 3 norm tolerance not met.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .exponents import ExponentSequence
from .hilbert import HilbertOptions, discrete_hilbert
from .multipliers import apply_multiplier, get_symbol, mikhlin_check
from .spaces import (Sequence, StepFunction, luxemburg_norm_seq,
                     luxemburg_norm_step, NormResult)
from .verify import (SUITE_NAMES, SuiteConfig, report_to_csv_text,
                     report_to_json_bytes, run_suite)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_PARSE = 2
EXIT_TOLERANCE = 3


class CliError(Exception):
    """Input problem attributable to the invocation; maps to exit code 2."""


def _load_json(path: str, what: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise CliError(f"{what} file {path!r} does not exist") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{what} file {path!r} is not valid JSON: {exc}") from exc


def _load_sequence(path: str) -> Sequence:
    obj = _load_json(path, "sequence")
    try:
        return Sequence.from_json_obj(obj)
    except (ValueError, TypeError) as exc:
        raise CliError(f"sequence file {path!r}: {exc}") from exc


def _load_step(path: str) -> StepFunction:
    obj = _load_json(path, "step function")
    try:
        return StepFunction.from_json_obj(obj)
    except (ValueError, TypeError) as exc:
        raise CliError(f"step function file {path!r}: {exc}") from exc


def _load_exponents(path: str) -> ExponentSequence:
    obj = _load_json(path, "exponents")
    try:
        return ExponentSequence.from_json_obj(obj)
    except (ValueError, TypeError) as exc:
        raise CliError(f"exponents file {path!r}: {exc}") from exc


def _emit(text_or_bytes, out: str | None):
    data = text_or_bytes if isinstance(text_or_bytes, bytes) else text_or_bytes.encode()
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_flat(obj: dict) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    keys = sorted(obj)
    writer.writerow(keys)
    writer.writerow([obj[k] for k in keys])
    return buf.getvalue()


def _norm_payload(result: NormResult) -> dict:
    return {
        "value": result.value,
        "modular_at_value": result.modular_at_value,
        "iterations": result.iterations,
        "tolerance_met": result.tolerance_met,
    }


def cmd_norm(args) -> int:
    p = _load_exponents(args.exponents)
    if args.step:
        g = _load_step(args.sequence)
        result = luxemburg_norm_step(g, _embedded_exponent_function(p), tol=args.tol)
    else:
        b = _load_sequence(args.sequence)
        result = luxemburg_norm_seq(b, p, tol=args.tol)
    payload = _norm_payload(result)
    text = _csv_flat(payload) if args.format == "csv" else _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK if result.tolerance_met else EXIT_TOLERANCE


def _embedded_exponent_function(p: ExponentSequence):
    from .embedding import embed

    return embed(Sequence.zero(), p).pfun


def cmd_hilbert(args) -> int:
    b = _load_sequence(args.sequence)
    window = tuple(args.window) if args.window else None
    opts = HilbertOptions(method=args.method, fft_padding=args.padding)
    out_seq = discrete_hilbert(b, window, opts)
    payload = out_seq.to_json_obj()
    text = _csv_flat({"window_start": payload["window_start"],
                      **{f"h_{i}": v for i, v in enumerate(payload["values"])}}) \
        if args.format == "csv" else _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK


def cmd_multiplier(args) -> int:
    b = _load_sequence(args.sequence)
    try:
        sym = get_symbol(args.symbol)
        out_seq = apply_multiplier(sym, b, args.grid_size)
    except (ValueError, OSError) as exc:
        raise CliError(str(exc)) from exc
    payload = out_seq.to_json_obj()
    _emit(_json_text(payload), args.out)
    return EXIT_OK


def cmd_mikhlin(args) -> int:
    try:
        sym = get_symbol(args.symbol)
        report = mikhlin_check(sym, args.bound, n_points=args.points)
    except (ValueError, OSError) as exc:
        raise CliError(str(exc)) from exc
    payload = asdict(report)
    payload["max_ratio_per_order"] = list(report.max_ratio_per_order)
    text = _csv_flat({k: v for k, v in payload.items() if k != "max_ratio_per_order"}) \
        if args.format == "csv" else _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_CHECKS_FAILED


def _suite_config(args) -> SuiteConfig:
    base = {}
    if args.config:
        base = _load_json(args.config, "config")
        base.pop("suite", None)
        base.pop("suites", None)
    if args.seed is not None:
        base["seed"] = args.seed
    if args.tol is not None:
        base["tol"] = args.tol
    try:
        return SuiteConfig.from_dict(base)
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad suite config: {exc}") from exc


def cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES:
        sys.stderr.write(f"unknown suite {args.suite!r}\n"
                         f"usage: choose one of: {', '.join(SUITE_NAMES)}\n")
        return EXIT_PARSE
    cfg = _suite_config(args)
    report = run_suite(args.suite, cfg)
    if args.format == "csv":
        _emit(report_to_csv_text(report), args.out)
    else:
        _emit(report_to_json_bytes(report, include_timestamp=args.stamp), args.out)
    return EXIT_OK if report.passed else EXIT_CHECKS_FAILED


def cmd_sweep(args) -> int:
    if not args.config:
        raise CliError("sweep requires --config with a 'suites' list")
    spec = _load_json(args.config, "config")
    suites = spec.pop("suites", None)
    if not suites:
        raise CliError("sweep config must list suites to run")
    axes_windows = spec.pop("sweep_windows", None)
    axes_families = spec.pop("sweep_exponents", None)
    if args.seed is not None:
        spec["seed"] = args.seed

    combos = []
    for suite in suites:
        if suite not in SUITE_NAMES:
            raise CliError(f"unknown suite {suite!r} in sweep config")
        for window in (axes_windows or [None]):
            for family in (axes_families or [None]):
                d = dict(spec)
                if window is not None:
                    d["window"] = window
                if family is not None:
                    d["exponents"] = family
                combos.append((suite, d))

    reports = []
    all_passed = True
    for suite, d in combos:
        try:
            cfg = SuiteConfig.from_dict(d)
        except (TypeError, ValueError) as exc:
            raise CliError(f"bad sweep entry for {suite}: {exc}") from exc
        report = run_suite(suite, cfg)
        all_passed &= report.passed
        reports.append(report)

    if args.format == "csv":
        chunks = [report_to_csv_text(r) for r in reports]
        # single header over all rows
        head, *rest = chunks[0].splitlines(keepends=True)
        body = [head, *rest]
        for chunk in chunks[1:]:
            body.extend(chunk.splitlines(keepends=True)[1:])
        _emit("".join(body), args.out)
    else:
        merged = [json.loads(report_to_json_bytes(r)) for r in reports]
        _emit(_json_text(merged), args.out)
    return EXIT_OK if all_passed else EXIT_CHECKS_FAILED


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="JSON config file; flags override its scalars")
    sub.add_argument("--seed", type=int, default=None, help="RNG seed")
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--tol", type=float, default=None, help="tolerance where applicable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varlp",
        description="Variable-exponent sequence spaces, discrete Hilbert "
                    "transform, Fourier multipliers, and verification suites.")
    subs = parser.add_subparsers(dest="command", required=True)

    norm = subs.add_parser("norm", help="Luxemburg norm of a sequence or step function")
    _add_common(norm)
    norm.add_argument("--sequence", required=True, help="input JSON path")
    norm.add_argument("--exponents", required=True, help="exponent JSON path")
    norm.add_argument("--step", action="store_true",
                      help="treat the input as a step function")
    norm.set_defaults(func=cmd_norm, tol_default=1e-10)

    hil = subs.add_parser("hilbert", help="discrete Hilbert transform of a sequence")
    _add_common(hil)
    hil.add_argument("--sequence", required=True)
    hil.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"),
                     help="inclusive output window")
    hil.add_argument("--method", choices=("direct", "fft"), default="fft")
    hil.add_argument("--padding", type=int, default=0,
                     help="output margin when no window is given")
    hil.set_defaults(func=cmd_hilbert)

    mult = subs.add_parser("multiplier", help="apply a registry symbol to a sequence")
    _add_common(mult)
    mult.add_argument("--sequence", required=True)
    mult.add_argument("--symbol", required=True,
                      help="one | shift | sgn | linear | riesz_tau:<t> | grid:<path>")
    mult.add_argument("--grid-size", type=int, default=1024)
    mult.set_defaults(func=cmd_multiplier)

    mik = subs.add_parser("mikhlin", help="weighted derivative condition report")
    _add_common(mik)
    mik.add_argument("--symbol", required=True)
    mik.add_argument("--bound", type=float, required=True)
    mik.add_argument("--points", type=int, default=2048)
    mik.set_defaults(func=cmd_mikhlin)

    ver = subs.add_parser("verify", help="run a named verification suite")
    _add_common(ver)
    ver.add_argument("--suite", required=True)
    ver.add_argument("--stamp", action="store_true",
                     help="include a wall-clock timestamp (breaks byte-stability)")
    ver.set_defaults(func=cmd_verify)

    sweep = subs.add_parser("sweep", help="run suites over config axes")
    _add_common(sweep)
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already; normalize other exits
        return int(exc.code) if exc.code is not None else EXIT_PARSE
    if getattr(args, "tol", None) is None:
        setattr(args, "tol", getattr(args, "tol_default", 1e-10))
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
