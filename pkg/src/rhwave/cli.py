"""Command-line entry point ``rhwave``.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
import time
import warnings

import numpy as np

from .bounds import BoundQuery, absolute_bound_monitor, bound_curve, threshold_x
from .coefficients import ExploratoryWarning, Method, ModelParams, coefficient
from .errors import ConfigError, DomainError, RHWaveError
from .mobius import DEFAULT_SIEVE_LIMIT, build_sieve
from .scanner import (
    ScanConfig,
    beta_sweep,
    default_onset_x,
    extract_features,
    first_crossing_x,
    run_scan,
    run_scan_checkpointed,
    CSV_COLUMNS,
    sample_row,
    write_samples,
    write_sweep,
)
from .special import build_zero_table
from .verification import run_all
from .wave import first_zero_amplitude, psi_bar

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("rhwave")


def _model_args(p: argparse.ArgumentParser, *, rho: bool = True) -> None:
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    if rho:
        p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--exploratory", action="store_true", help="allow 1/2 < alpha <= 1")


def _params(args) -> ModelParams:
    return ModelParams(args.alpha, args.beta, getattr(args, "rho", 0.5), exploratory=args.exploratory)


def _method(text: str) -> Method:
    try:
        return Method(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"method must be one of direct, exp, binomial; got {text!r}")


def _betas(text: str) -> list[float]:
    try:
        return [float(b) for b in text.split(",") if b.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"betas must be comma-separated numbers, got {text!r}")


def _int(text: str) -> int:
    # accepts 1e6 style
    v = float(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(v)


def cmd_zeros(args) -> int:
    zeros = build_zero_table(args.count)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["index", "ordinate", "zeta_prime_re", "zeta_prime_im"])
    for i, r in enumerate(zeros, 1):
        w.writerow([i, f"{r.ordinate:.15f}", f"{r.zeta_prime.real:.17g}", f"{r.zeta_prime.imag:.17g}"])
    return EXIT_OK


def cmd_ck(args) -> int:
    params = _params(args)
    table = None if args.method is Method.BINOMIAL else build_sieve(args.sieve_limit)
    res = coefficient(params, args.k, table, args.method)
    print(f"c_k        {res.value:.17g}")
    print(f"tail_bound {res.tail_bound:.6g}")
    print(f"terms_used {res.terms_used}")
    print(f"method     {res.method.value}")
    return EXIT_OK


def cmd_amplitude(args) -> int:
    params = _params(args)
    zeros = build_zero_table(args.zeros)
    pred = first_zero_amplitude(params, zeros)
    print(f"amplitude  {pred.amplitude:.10g}")
    print(f"period_x   {pred.period_x:.10g}")
    if args.zeros > 1:
        # multi-zero psibar sampled across one first-zero period deep in the asymptotic region
        xs = np.linspace(args.at_x, args.at_x + pred.period_x, 512)
        peak = max(abs(psi_bar(params, math.exp(x), zeros)) for x in xs)
        print(f"peak_psi_bar_{args.zeros}_zeros {peak:.10g}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    params = ModelParams(args.alpha, args.beta)
    q = BoundQuery(params, args.cap, args.target)
    x = threshold_x(q, exact=args.exact)
    print(f"threshold_x {x:.1f}")
    if args.emit_curve:
        xs = np.arange(0.0, max(x, 1.0) + 10.0, args.step)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "bound", "bound_exact"])
        for row in bound_curve(params, args.cap, xs):
            w.writerow([f"{v:.17g}" for v in row])
    return EXIT_OK


def _scan_config(args, params) -> ScanConfig:
    return ScanConfig(
        params=params,
        k_min=args.k_min,
        k_max=args.k_max,
        points=args.points,
        stride=args.stride,
        sieve_limit=args.sieve_limit,
        method=args.method,
        zeros_used=args.zeros,
        trivial_zeros=args.trivial_zeros,
        output_path=None,
        workers=args.workers,
    )


def _report_features(samples, params, zeros) -> None:
    if len(samples) < 3:
        return
    onset = default_onset_x(samples, params, zeros)
    f = extract_features(samples, onset)
    mon = absolute_bound_monitor(samples)
    first = first_crossing_x(samples)
    err = sys.stderr
    print(f"# onset_x {onset:.4f}  first_crossing_x {first}", file=err)
    print(f"# crossings {f.crossing_count}  period_x {f.measured_period_x}  amplitude {f.measured_amplitude}", file=err)
    print(f"# max|psi| {mon.max_abs_psi:.6g} at k={mon.at_k}  margin to {mon.bound:.5f}: {mon.margin:.6g}", file=err)


def cmd_scan(args) -> int:
    params = _params(args)
    config = _scan_config(args, params)
    table = None if config.method is Method.BINOMIAL else build_sieve(args.sieve_limit)
    zeros = build_zero_table(args.zeros)
    t0 = time.perf_counter()
    if args.checkpoint:
        if not args.out:
            raise ConfigError("--checkpoint needs --out")
        samples = run_scan_checkpointed(config, table, zeros, args.out)
    else:
        samples = run_scan(config, table, zeros)
        if args.out:
            write_samples(samples, args.out, config=config, fmt=args.format)
        elif args.format == "json":
            json.dump({"samples": [s.__dict__ for s in samples]}, sys.stdout, indent=1)
            print()
        else:
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            w.writerows(sample_row(s) for s in samples)
    log.info("scan of %d points in %.1fs", len(samples), time.perf_counter() - t0)
    _report_features(samples, params, zeros)
    return EXIT_OK


def cmd_sweep(args) -> int:
    table = build_sieve(args.sieve_limit)
    zeros = build_zero_table(args.zeros)
    result = beta_sweep(
        args.alpha, args.betas, args.k_max, table, zeros,
        k_min=args.k_min, points=args.points, rho=args.rho, method=args.method,
        zeros_used=args.zeros, workers=args.workers,
    )
    if args.out:
        combined, ck = write_sweep(result, args.out)
        print(f"wrote {combined} and {ck}")
    for b in result.betas:
        s = result.scans[b]
        params = ModelParams(args.alpha, b, args.rho)
        onset = default_onset_x(s, params, zeros)
        max_c = max(abs(v.c_k) for v in s if v.k >= 1)
        print(f"beta={b:g} onset_x={onset:.4f} first_crossing_x={first_crossing_x(s)} max|c_k|={max_c:.10g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = run_all()
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"[{flag}] {r.name}: {r.detail} ({r.seconds:.2f}s)")
    ok = all(r.passed for r in results)
    print(f"{'all checks passed' if ok else 'VERIFICATION FAILED'} in {time.perf_counter() - t0:.1f}s")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rhwave", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="print refined zero ordinates and zeta' as CSV")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("ck", help="one coefficient c_k")
    _model_args(p)
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--method", type=_method, default=Method.DIRECT)
    p.add_argument("--sieve-limit", type=_int, default=DEFAULT_SIEVE_LIMIT)
    p.set_defaults(func=cmd_ck)

    p = sub.add_parser("amplitude", help="first-zero amplitude and wavelength")
    _model_args(p, rho=False)
    p.add_argument("--zeros", type=int, default=1)
    p.add_argument("--at-x", type=float, default=20.0, help="x where the multi-zero peak is sampled")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("bounds", help="crude-bound threshold in x = ln k")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--cap", type=_int, required=True, help="Möbius cutoff N")
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--exact", action="store_true", help="keep log(1 - N^-beta) instead of -N^-beta")
    p.add_argument("--emit-curve", action="store_true")
    p.add_argument("--step", type=float, default=0.1)
    p.set_defaults(func=cmd_bounds)

    for name, helptext in (("scan", "wave scan over a k grid"), ("sweep", "beta sweep on a shared grid")):
        p = sub.add_parser(name, help=helptext)
        if name == "scan":
            _model_args(p)
            p.add_argument("--stride", type=_int, default=None)
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--checkpoint", action="store_true", help="append rows as computed; resume if --out exists")
            p.add_argument("--trivial-zeros", action="store_true")
        else:
            p.add_argument("--alpha", type=float, default=3.5)
            p.add_argument("--betas", type=_betas, default=[4.0, 8.0, 12.0, 20.0])
            p.add_argument("--rho", type=float, default=0.5)
        p.add_argument("--k-min", type=_int, default=1)
        p.add_argument("--k-max", type=_int, required=True)
        p.add_argument("--points", type=int, default=400)
        p.add_argument("--sieve-limit", type=_int, default=DEFAULT_SIEVE_LIMIT)
        p.add_argument("--zeros", type=int, default=1)
        p.add_argument("--method", type=_method, default=Method.DIRECT)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None)
        p.set_defaults(func=cmd_scan if name == "scan" else cmd_sweep)

    p = sub.add_parser("verify", help="run the oracle/identity suite")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    warnings.simplefilter("ignore" if not args.verbose else "default", ExploratoryWarning)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"rhwave: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"rhwave: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RHWaveError as exc:
        print(f"rhwave: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
