#!/usr/bin/env python3
"""Smoothed second-moment scan over a list of family sizes X.

Emits one JSON (or CSV) report per X comparing the weighted sum of squared
central values against the predicted main term C_f * Jtilde(1) * X * log X.

Example:
    python3 scripts/moment_scan.py --x 1e4 1e5 4e5 --format csv
"""

import argparse
import sys
import time

from qtwist import lfun, moments
from qtwist.modform import build_delta_coefficients, sym2_coefficients


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=float, nargs="+", default=[1e4, 1e5])
    ap.add_argument("--tol", type=float, default=1e-4)
    ap.add_argument("--prime-cutoff", type=int, default=10**5)
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args()

    cfg = moments.RunConfig(X_list=tuple(args.x), tol=args.tol,
                            prime_cutoff=args.prime_cutoff)
    n_needed = lfun.n_cutoff(2 * max(args.x), args.tol) + 10
    coeffs = build_delta_coefficients(n_needed, args.cache_dir)
    sym2 = sym2_coefficients(coeffs, min(coeffs.n_max, 1_250_000))
    constants = moments.build_constants(coeffs, sym2, cfg)
    J = moments.default_window(cfg)

    reports = []
    for X in args.x:
        t0 = time.monotonic()
        rep = moments.moment_smoothed(X, J, coeffs, constants, cfg)
        print(f"# X={X:g}: ratio={rep.ratio:.4f} d_count={rep.d_count} "
              f"({time.monotonic() - t0:.1f}s)", file=sys.stderr)
        reports.append(rep)

    if args.format == "json":
        sys.stdout.write(moments.report_to_json(reports))
    else:
        sys.stdout.write(moments.report_to_csv(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
