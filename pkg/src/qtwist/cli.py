"""Command-line surface.

Subcommands: tau, gauss, lvalue, constants, moments, charsum, verify.
Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

import numpy as np

from . import charsum, gauss, kernels, lfun, moments
from .arith import default_sieve, enumerate_fundamental_discriminants
from .modform import build_delta_coefficients, sym2_coefficients


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--seed", type=int, default=0)


def _set_threads(n: int) -> None:
    if n > 0:
        import numba

        numba.set_num_threads(n)


def _emit(args, reports) -> None:
    if args.format == "json":
        sys.stdout.write(moments.report_to_json(reports))
    else:
        sys.stdout.write(moments.report_to_csv(reports))


def cmd_tau(args) -> int:
    coeffs = build_delta_coefficients(args.n_max, args.cache_dir)
    for n in range(1, min(args.n_max, args.show) + 1):
        print(f"{n},{coeffs.tau[n]}")
    return 0


def cmd_gauss(args) -> int:
    exact = gauss.gauss_closed(args.k, args.n)
    brute = gauss.gauss_brute(args.k, args.n) if args.n <= 10**5 else None
    out = {"k": args.k, "n": args.n, "coeff": exact.coeff,
           "radicand": exact.radicand, "value": exact.value}
    if brute is not None:
        out["brute_re"] = brute.real
        out["brute_im"] = brute.imag
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_lvalue(args) -> int:
    coeffs = build_delta_coefficients(
        max(lfun.n_cutoff(8 * args.d, args.tol) + 10, 1000), args.cache_dir
    )
    r = lfun.l_half_twist(args.d, coeffs, tol=args.tol)
    print(json.dumps({"d": r.d, "value": r.value, "n_cut": r.n_cut,
                      "tail_bound": r.tail_bound}, sort_keys=True))
    return 0


def cmd_constants(args) -> int:
    coeffs = build_delta_coefficients(
        max(30 * int(args.smoothing), args.prime_cutoff + 10), args.cache_dir
    )
    sym2 = sym2_coefficients(coeffs, 30 * int(args.smoothing))
    c = lfun.constant_Cf(coeffs, sym2, prime_cutoff=args.prime_cutoff,
                         Y=args.smoothing)
    _emit(args, [c])
    return 0


def cmd_moments(args) -> int:
    _set_threads(args.threads)
    cfg = moments.RunConfig(
        X_list=(args.x,), k_list=(args.k,), tol=args.tol,
        caln_policy=(f"fixed:{args.caln}" if args.caln else "X/log^3"),
        prime_cutoff=args.prime_cutoff, thread_count=args.threads,
        output_format=args.format,
    )
    n_needed = lfun.n_cutoff(2 * args.x, cfg.tol) + 10
    coeffs = build_delta_coefficients(n_needed, args.cache_dir)
    if args.smoothed:
        sym2 = sym2_coefficients(coeffs, min(coeffs.n_max, 12 * 10**5))
        constants = moments.build_constants(coeffs, sym2, cfg)
        J = moments.default_window(cfg)
        rep = moments.moment_smoothed(args.x, J, coeffs, constants, cfg)
    else:
        rep = moments.moment_raw(args.x, args.k, coeffs, cfg)
    _emit(args, [rep])
    return 0


def cmd_charsum(args) -> int:
    coeffs = build_delta_coefficients(int(2 * args.n) + 10, args.cache_dir)
    G = kernels.build_partition_G()
    q = charsum.CharSumQuery(M=args.m, N=args.n, t=args.t,
                             flavor=args.flavor)
    val = charsum.S_brute(q, coeffs, G)
    print(json.dumps({"M": args.m, "N": args.n, "t": args.t,
                      "flavor": args.flavor, "value": val,
                      "ratio": val / charsum.shape_bound(args.m, args.n, args.t)},
                     sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    _set_threads(args.threads)
    rng = random.Random(args.seed)
    failures = []
    suites = args.suites or ["all"]
    run_all = "all" in suites

    if run_all or "kernels" in suites:
        for x in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0):
            dev = abs(kernels.w_half(x) - kernels.w_half_contour(x))
            if dev > 1e-8:
                failures.append(f"kernel deviation {dev:.2e} at x={x}")

    if run_all or "gauss" in suites:
        sieve = default_sieve(4000)
        for _ in range(200):
            n = 2 * rng.randrange(1, 1500) + 1
            k = rng.randrange(-60, 61)
            dev = abs(gauss.gauss_brute(k, n)
                      - gauss.gauss_closed(k, n, sieve).value)
            if dev > 1e-6 * max(1.0, math.sqrt(n)):
                failures.append(f"gauss deviation {dev:.2e} at k={k}, n={n}")

    if run_all or "poisson" in suites:
        F = kernels.build_test_F()
        for n, Z in ((1, 20.0), (9, 50.0), (15, 40.0)):
            r = charsum.poisson_verify(n, Z, F)
            if r.deviation > 1e-8:
                failures.append(f"poisson deviation {r.deviation:.2e} at n={n}")

    if run_all or "fe" in suites:
        coeffs = build_delta_coefficients(60000, args.cache_dir)
        G = kernels.build_partition_G()
        kern = kernels.GraveKernel(G, lfun.KAPPA)
        fds = [f.m for f in
               enumerate_fundamental_discriminants(4, both_signs=True)]
        for m in fds[:2]:
            dev = lfun.verify_functional_equation(m, 2.0 * m * m, 0.0,
                                                  coeffs, G, kern)
            if dev > 1e-6:
                failures.append(f"fe residual {dev:.2e} at m={m}")

    for f in failures:
        print(f"FAIL {f}")
    print(f"verify: {len(failures)} failure(s)")
    return 1 if failures else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="qtwist")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("tau", help="exact coefficient table")
    p.add_argument("--n-max", type=int, default=1000)
    p.add_argument("--show", type=int, default=30)
    _add_common(p)
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("gauss", help="one Gauss-type sum, closed and brute")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_gauss)

    p = sub.add_parser("lvalue", help="one twisted central value")
    p.add_argument("--d", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_lvalue)

    p = sub.add_parser("constants", help="Euler-product constants")
    p.add_argument("--prime-cutoff", type=int, default=10**5)
    p.add_argument("--smoothing", type=float, default=1e4)
    _add_common(p)
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("moments", help="moment aggregation")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--smoothed", action="store_true")
    p.add_argument("--caln", type=float, default=None)
    p.add_argument("--prime-cutoff", type=int, default=10**5)
    _add_common(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("charsum", help="one S-sum query")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--flavor", choices=(charsum.FLAVOR_ALL,
                                        charsum.FLAVOR_FUND),
                   default=charsum.FLAVOR_ALL)
    _add_common(p)
    p.set_defaults(fn=cmd_charsum)

    p = sub.add_parser("verify", help="identity suites")
    p.add_argument("suites", nargs="*",
                   choices=["all", "kernels", "gauss", "poisson", "fe"])
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
