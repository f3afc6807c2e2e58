"""Moment aggregation over the family of twists and report emission.

Raw k-th moments, the smoothed second moment against its predicted main
term, and the short-sum / remainder split with the Cauchy-Schwarz
cross-term check.  All reductions are fixed-order exact summation over
d-ascending values, so reports are byte-identical for any thread count.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .arith import Sieve, default_sieve, enumerate_twist_moduli
from .kernels import MomentWindowJ, build_J
from .lfun import EulerConstants, constant_Cf, l_half_twist_batch, n_cutoff
from .modform import EigenformCoefficients, Sym2Coefficients


@dataclass(frozen=True)
class RunConfig:
    X_list: tuple[float, ...] = (1e4,)
    k_list: tuple[int, ...] = (2,)
    tol: float = 1e-4
    caln_policy: str = "X/log^3"  # or "fixed:<value>"
    j_width: float = 0.125
    prime_cutoff: int = 10**5
    thread_count: int = 0  # 0 = leave scheduler default
    output_format: str = "json"

    def caln_for(self, X: float) -> float:
        if self.caln_policy.startswith("fixed:"):
            return float(self.caln_policy.split(":", 1)[1])
        return X / math.log(X) ** 3

    def config_hash(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class MomentReport:
    X: float
    k: int
    raw_sum: float
    smoothed_sum: float
    predicted_main: float
    ratio: float
    d_count: int
    config_hash: str
    quantity: str = "twist-central-value-moment"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tolerance_met"] = True
        return d


def _fsum(values) -> float:
    return math.fsum(float(v) for v in values)


def moment_raw(
    X: float,
    k: int,
    coeffs: EigenformCoefficients,
    config: RunConfig | None = None,
    sieve: Sieve | None = None,
) -> MomentReport:
    """sum over odd squarefree d with 8d < X of L(1/2)^k."""
    config = config or RunConfig(X_list=(X,), k_list=(k,))
    if X > 10**6:
        raise ValueError("X above the supported desk-scale ceiling 1e6")
    ds = enumerate_twist_moduli(X, sieve)
    if not ds:
        return MomentReport(X=X, k=k, raw_sum=0.0, smoothed_sum=0.0,
                            predicted_main=0.0, ratio=0.0, d_count=0,
                            config_hash=config.config_hash())
    needed = n_cutoff(8 * max(ds), config.tol)
    sieve = sieve or default_sieve(max(needed, 2))
    vals, _ = l_half_twist_batch(
        np.array(ds), coeffs, tol=config.tol, sieve=sieve
    )
    total = _fsum(v**k for v in vals)
    return MomentReport(X=X, k=k, raw_sum=total, smoothed_sum=0.0,
                        predicted_main=0.0, ratio=0.0, d_count=len(ds),
                        config_hash=config.config_hash())


def predicted_main_term(X: float, J: MomentWindowJ,
                        constants: EulerConstants) -> float:
    """C_f * J~(1) * X * log X with C_f = (2/pi^2) L(1,sym^2)^3 H2(0,0)."""
    return constants.C_f * J.mellin_at_1() * X * math.log(X)


def moment_smoothed(
    X: float,
    J: MomentWindowJ,
    coeffs: EigenformCoefficients,
    constants: EulerConstants,
    config: RunConfig | None = None,
    sieve: Sieve | None = None,
) -> MomentReport:
    """sum over odd squarefree d of L(1/2)^2 J(8d/X) against the predicted
    main term."""
    config = config or RunConfig(X_list=(X,))
    if J.mellin_at_1() <= 0:
        raise ValueError("degenerate window: integral must be positive")
    all_ds = enumerate_twist_moduli(2 * X + 8, sieve)
    ds = [d for d in all_ds if J(8 * d / X) > 0.0]
    if not ds:
        return MomentReport(X=X, k=2, raw_sum=0.0, smoothed_sum=0.0,
                            predicted_main=predicted_main_term(X, J, constants),
                            ratio=0.0, d_count=0,
                            config_hash=config.config_hash())
    needed = n_cutoff(8 * max(ds), config.tol)
    sieve = sieve or default_sieve(max(needed, 2))
    vals, _ = l_half_twist_batch(
        np.array(ds), coeffs, tol=config.tol, sieve=sieve
    )
    weights = J(8 * np.array(ds, dtype=np.float64) / X)
    total = _fsum(v * v * w for v, w in zip(vals, weights))
    pred = predicted_main_term(X, J, constants)
    return MomentReport(X=X, k=2, raw_sum=0.0, smoothed_sum=total,
                        predicted_main=pred,
                        ratio=total / pred if pred > 0 else 0.0,
                        d_count=len(ds), config_hash=config.config_hash())


@dataclass(frozen=True)
class ABScanRecord:
    X: float
    caln: float
    sum_AA: float
    sum_BB: float
    sum_AB: float
    smoothed_sum: float
    cross_term_ok: bool
    config_hash: str


def ab_moment_scan(
    X: float,
    caln: float,
    coeffs: EigenformCoefficients,
    J: MomentWindowJ,
    config: RunConfig | None = None,
    sieve: Sieve | None = None,
) -> ABScanRecord:
    """Split L = A + B with the short-sum kernel scale min(caln, 8d);
    returns the three weighted square sums and the Cauchy-Schwarz check."""
    config = config or RunConfig(X_list=(X,))
    all_ds = enumerate_twist_moduli(2 * X + 8, sieve)
    ds = [d for d in all_ds if J(8 * d / X) > 0.0]
    needed = n_cutoff(8 * max(ds), config.tol) if ds else 2
    sieve = sieve or default_sieve(max(needed, 2))
    ds_arr = np.array(ds, dtype=np.int64)
    full, _ = l_half_twist_batch(ds_arr, coeffs, tol=config.tol, sieve=sieve)
    a_vals, _ = l_half_twist_batch(ds_arr, coeffs, tol=config.tol,
                                   sieve=sieve, caln=caln)
    b_vals = full - a_vals
    w = J(8 * ds_arr.astype(np.float64) / X)
    s_aa = _fsum(a * a * wi for a, wi in zip(a_vals, w))
    s_bb = _fsum(b * b * wi for b, wi in zip(b_vals, w))
    s_ab = _fsum(a * b * wi for a, b, wi in zip(a_vals, b_vals, w))
    smoothed = _fsum(v * v * wi for v, wi in zip(full, w))
    ok = abs(s_ab) <= math.sqrt(max(s_aa, 0.0) * max(s_bb, 0.0)) + 1e-12
    return ABScanRecord(X=X, caln=caln, sum_AA=s_aa, sum_BB=s_bb,
                        sum_AB=s_ab, smoothed_sum=smoothed,
                        cross_term_ok=ok, config_hash=config.config_hash())


# ---------------------------------------------------------------------------
# serialization


def report_to_json(reports: list) -> str:
    rows = []
    for r in reports:
        d = r.to_dict() if hasattr(r, "to_dict") else asdict(r)
        rows.append({k: (repr(v) if isinstance(v, float) else v)
                     for k, v in sorted(d.items())})
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def report_to_csv(reports: list) -> str:
    buf = io.StringIO()
    if not reports:
        return ""
    first = reports[0]
    d0 = first.to_dict() if hasattr(first, "to_dict") else asdict(first)
    cols = sorted(d0.keys())
    w = csv.writer(buf)
    w.writerow(cols)
    for r in reports:
        d = r.to_dict() if hasattr(r, "to_dict") else asdict(r)
        w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c]
                    for c in cols])
    return buf.getvalue()


def build_constants(
    coeffs: EigenformCoefficients,
    sym2: Sym2Coefficients,
    config: RunConfig,
    Y: float = 1e4,
) -> EulerConstants:
    return constant_Cf(coeffs, sym2, prime_cutoff=config.prime_cutoff, Y=Y)


def default_window(config: RunConfig | None = None) -> MomentWindowJ:
    return build_J(config.j_width if config else 0.125)
