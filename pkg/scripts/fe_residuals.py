#!/usr/bin/env python3
"""Functional-equation residual sweep over fundamental discriminants.

For each discriminant m in the requested range and each shift z, verifies
the smoothed two-sided identity and prints the residual; a CSV row per
(m, z) pair goes to stdout.

Example:
    python3 scripts/fe_residuals.py --m-max 100 --shifts 0 0.25
"""

import argparse
import csv
import sys
import time

from qtwist import kernels, lfun
from qtwist.arith import is_fundamental_discriminant
from qtwist.modform import build_delta_coefficients


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=60)
    ap.add_argument("--shifts", type=float, nargs="+", default=[0.0],
                    help="imaginary parts of the shift z = i*s")
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args()

    n_needed = max(4 * args.m_max**2 + 10, 60_000)
    coeffs = build_delta_coefficients(n_needed, args.cache_dir)
    G = kernels.build_partition_G()
    kern = kernels.GraveKernel(G, lfun.KAPPA)
    ms = [m for m in range(-args.m_max, args.m_max + 1)
          if m != 0 and is_fundamental_discriminant(m)]

    w = csv.writer(sys.stdout)
    w.writerow(["m", "z_imag", "residual", "seconds"])
    for s in args.shifts:
        z = 1j * s if s else 0.0
        for m in ms:
            t0 = time.monotonic()
            r = lfun.verify_functional_equation(m, 2.0 * m * m, z, coeffs,
                                                G, kern)
            w.writerow([m, s, repr(r), f"{time.monotonic() - t0:.2f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
