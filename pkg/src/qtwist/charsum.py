"""Brute-force quadratic character sums.

The moduli-averaged square sums S and S-flat, Poisson-summation identity
checks over the twist modulus (single and two-index versions), the
prime-inflation inequalities, and the empirical shape scan of the
S-flat bound.  Everything here is a direct double loop by design: this
module is the trusted oracle layer.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .arith import (
    Sieve,
    default_sieve,
    enumerate_fundamental_discriminants,
)
from ._fast import char_sum_rows, chi_row, jacobi_rows_brute
from .gauss import gauss_value, is_perfect_square
from .kernels import PartitionG, TestFunctionF
from .modform import EigenformCoefficients

FLAVOR_ALL = "all-integers"
FLAVOR_FUND = "fundamental-discriminants"


@dataclass(frozen=True)
class CharSumQuery:
    M: float
    N: float
    t: float = 0.0
    flavor: str = FLAVOR_ALL

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("M and N must be >= 1")
        if self.flavor not in (FLAVOR_ALL, FLAVOR_FUND):
            raise ValueError(f"unknown flavor {self.flavor!r}")


def _moduli_for(query: CharSumQuery, sieve: Sieve) -> np.ndarray:
    lo, hi = int(math.ceil(query.M)), int(math.ceil(2 * query.M))
    if query.flavor == FLAVOR_ALL:
        pos = [m for m in range(lo, hi) if query.M <= m < 2 * query.M]
        return np.array(pos + [-m for m in pos], dtype=np.int64)
    fds = enumerate_fundamental_discriminants(query.M, both_signs=True,
                                              sieve=sieve)
    return np.array([f.m for f in fds], dtype=np.int64)


def _block_weights(N: float, t: float, n_hi: int,
                   coeffs: EigenformCoefficients, G: PartitionG
                   ) -> tuple[np.ndarray, np.ndarray]:
    """weight(n) = lam(n) n^{-1/2-it} G(n/N) as (re, im) arrays, index n."""
    if n_hi > coeffs.n_max:
        raise ValueError("coefficient table too small")
    n = np.arange(n_hi + 1, dtype=np.float64)
    n[0] = 1.0
    w = coeffs.lam[: n_hi + 1] * n**-0.5 * G(n / N)
    phase = -t * np.log(n)
    return w * np.cos(phase), w * np.sin(phase)


def S_brute(
    query: CharSumQuery,
    coeffs: EigenformCoefficients,
    G: PartitionG,
    sieve: Sieve | None = None,
) -> float:
    """sum over moduli m of |sum_n lam(n) n^{-1/2-it} G(n/N) (m/n)|^2."""
    if query.M * query.N > 1e8:
        raise ValueError("work bound M*N <= 1e8 exceeded")
    n_hi = int(2 * query.N)
    n_lo = max(1, int(math.ceil(0.75 * query.N)))
    sieve = sieve or default_sieve(max(n_hi, int(2 * query.M) + 4, 2))
    if n_hi < n_lo:
        return 0.0
    wr, wi = _block_weights(query.N, query.t, n_hi, coeffs, G)
    ms = _moduli_for(query, sieve)
    if len(ms) == 0:
        return 0.0
    return float(char_sum_rows(ms, n_lo, n_hi, wr, wi, sieve.spf))


# ---------------------------------------------------------------------------
# inflation inequalities


@dataclass(frozen=True)
class InflationCheck:
    m: int
    N: float
    t: float
    p: int
    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float

    @property
    def ok(self) -> bool:
        return self.lhs1 <= self.rhs1 + 1e-12 * (1 + self.rhs1) and (
            self.lhs2 <= self.rhs2 + 1e-12 * (1 + self.rhs2)
        )


def check_inflation_pointwise(
    m: int,
    N: float,
    t: float,
    p: int,
    coeffs: EigenformCoefficients,
    G: PartitionG,
    sieve: Sieve | None = None,
) -> InflationCheck:
    """The two stage bounds behind the prime-inflation step, as exact
    numeric inequalities for a single modulus m:

      |T(m)|^2 <= 2 |T(m p^2)|^2 + 2 d(p not| m) |T restricted to p|n|^2
      |S2|^2   <= (2 lam(p)^2 / p) |S2a|^2 + (2/p^2) |S2b|^2

    with S2 the lam(np)-shifted sum and S2a, S2b its Hecke-split parts."""
    if p % 2 == 0 or p < 3:
        raise ValueError("p must be an odd prime")
    n_hi = int(2 * N)
    sieve = sieve or default_sieve(max(n_hi, abs(m) * p * p + 4, 2))
    n = np.arange(n_hi + 1, dtype=np.float64)
    n[0] = 1.0
    base = coeffs.lam[: n_hi + 1] * n**-0.5 * np.exp(-1j * t * np.log(n))
    chi_m = chi_row(m, n_hi, sieve.spf).astype(np.float64)
    chi_mp2 = chi_row(m * p * p, n_hi, sieve.spf).astype(np.float64)
    win = G(n / N)

    T_m = np.sum(base * chi_m * win)
    T_mp2 = np.sum(base * chi_mp2 * win)
    mask_p = np.zeros(n_hi + 1, dtype=bool)
    mask_p[p::p] = True
    T_div = np.sum((base * chi_m * win)[mask_p])
    delta = 1.0 if m % p != 0 else 0.0
    lhs1 = abs(T_m) ** 2
    rhs1 = 2.0 * abs(T_mp2) ** 2 + 2.0 * delta * abs(T_div) ** 2

    # second stage on the lam(np) sum
    idx = np.arange(n_hi + 1)
    np_idx = idx * p
    lam_np = np.where(np_idx <= coeffs.n_max, coeffs.lam[np.minimum(np_idx, coeffs.n_max)], 0.0)
    lam_np[0] = 0.0
    np_f = np.maximum(np_idx, 1).astype(np.float64)
    s2_terms = (
        lam_np * np_f**-0.5 * np.exp(-1j * t * np.log(np_f))
        * chi_m * G(np_f / N)
    )
    S2 = np.sum(s2_terms[1:])
    S2a = np.sum(base * chi_m * G(n * p / N))
    S2b = np.sum(base * chi_m * G(n * p * p / N))
    lam_p = float(coeffs.lam[p])
    lhs2 = abs(S2) ** 2
    rhs2 = (2.0 * lam_p**2 / p) * abs(S2a) ** 2 + (2.0 / p**2) * abs(S2b) ** 2

    return InflationCheck(m=m, N=N, t=t, p=p, lhs1=lhs1, rhs1=rhs1,
                          lhs2=lhs2, rhs2=rhs2)


# ---------------------------------------------------------------------------
# Poisson-summation verification over the twist modulus


@dataclass(frozen=True)
class PoissonCheckResult:
    n: int
    Z: float
    lhs: float
    rhs: float
    k_trunc: int
    deviation: float
    which: str


def _jacobi_periodic(n: int) -> np.ndarray:
    """(a/n) for a mod n; (d/n) for any integer d is row[d % n] (n odd > 0)."""
    return jacobi_rows_brute(n).astype(np.float64)


def poisson_verify(
    n: int,
    Z: float,
    F: TestFunctionF,
    which: str = "simple",
) -> PoissonCheckResult:
    """Check sum_d (d/n) F(d/Z) against (Z/n) sum_k G_k(n) Fcheck(kZ/n),
    and the odd-d variant with the (2/n) prefactor and (-1)^k."""
    if n % 2 == 0 or n < 1 or n > 10**4:
        raise ValueError("n must be odd, positive, <= 1e4")
    if which not in ("simple", "8d"):
        raise ValueError("which must be 'simple' or '8d'")
    row = _jacobi_periodic(n)
    D = int(Z * F.x_cut) + 1
    d = np.arange(-D, D + 1)
    if which == "8d":
        d = d[d % 2 != 0]
    chi = row[np.mod(d, n)]
    lhs = float(np.dot(chi, F(d / Z)))

    denom = n if which == "simple" else 2 * n
    k_max = int(F.check_support * denom / Z) + 1
    rhs = 0.0
    for k in range(-k_max, k_max + 1):
        fc = F.f_check(k * Z / denom)
        if fc == 0.0:
            continue
        sign = 1.0 if which == "simple" else (-1.0) ** k
        rhs += sign * gauss_value(k, n) * fc
    rhs *= Z / denom
    if which == "8d":
        from .arith import kronecker

        rhs *= kronecker(2, n)
    return PoissonCheckResult(n=n, Z=Z, lhs=lhs, rhs=float(rhs),
                              k_trunc=k_max, deviation=abs(lhs - rhs),
                              which=which)


def poisson2_verify(
    n1: int,
    n2: int,
    X: float,
    F: TestFunctionF,
    sieve: Sieve | None = None,
) -> PoissonCheckResult:
    """Two-index variant: sum over odd d of (8d/n1n2) F(d/X) against the
    square main term (X/2) Fhat(0) prod_{p|n1n2}(1-1/p) plus the finite
    k-sum (X/2) sum_{k!=0} (-1)^k G_k(n1n2)/(n1n2) Fcheck(kX/(2 n1 n2))."""
    n = n1 * n2
    if n % 2 == 0 or n > 10**4:
        raise ValueError("n1*n2 must be odd and <= 1e4")
    sieve = sieve or default_sieve(max(n, 2))
    row = _jacobi_periodic(n)
    D = int(X * F.x_cut) + 1
    d = np.arange(-D, D + 1)
    d = d[d % 2 != 0]
    from .arith import kronecker

    chi = kronecker(2, n) * row[np.mod(d, n)]  # (8d/n) = (2/n)(d/n), n odd
    lhs = float(np.dot(chi, F(d / X)))

    rhs = 0.0
    if is_perfect_square(n):
        phi_ratio = 1.0
        for p, _ in sieve.factorize(n).factors:
            phi_ratio *= 1.0 - 1.0 / p
        rhs += (X / 2.0) * F.f_hat(0.0) * phi_ratio
    k_max = int(F.check_support * 2 * n / X) + 1
    for k in range(-k_max, k_max + 1):
        if k == 0:
            continue
        fc = F.f_check(k * X / (2.0 * n))
        if fc == 0.0:
            continue
        rhs += (X / 2.0) * (-1.0) ** k * gauss_value(k, n, sieve) / n * fc
    return PoissonCheckResult(n=n, Z=X, lhs=lhs, rhs=float(rhs),
                              k_trunc=k_max, deviation=abs(lhs - rhs),
                              which="two-index")


# ---------------------------------------------------------------------------
# shape scan


@dataclass(frozen=True)
class ScanRow:
    M: float
    N: float
    t: float
    flavor: str
    value: float
    ratio: float


def shape_bound(M: float, N: float, t: float) -> float:
    return (1.0 + abs(t)) ** 2 * (M + N * math.log(2.0 + N / M))


def prop_key_shape_scan(
    queries: list[CharSumQuery],
    coeffs: EigenformCoefficients,
    G: PartitionG,
    sieve: Sieve | None = None,
) -> list[ScanRow]:
    rows = []
    for q in queries:
        val = S_brute(q, coeffs, G, sieve)
        rows.append(
            ScanRow(M=q.M, N=q.N, t=q.t, flavor=q.flavor, value=val,
                    ratio=val / shape_bound(q.M, q.N, q.t))
        )
    return rows


def write_scan_csv(rows: list[ScanRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["M", "N", "t", "flavor", "value", "ratio"])
        for r in rows:
            w.writerow([r.M, r.N, r.t, r.flavor, repr(r.value), repr(r.ratio)])


def dual_sum_instance(
    m: int,
    N: float,
    t: float,
    coeffs: EigenformCoefficients,
    G: PartitionG,
    sieve: Sieve | None = None,
) -> tuple[float, float]:
    """(|block sum|, reference scale sqrt(N0) log(N0+2)) with
    N0 = min(N, m^2 (1+|t|)^2 / N), for empirical-envelope scans."""
    n_hi = int(2 * N)
    sieve = sieve or default_sieve(max(n_hi, abs(m) + 4, 2))
    wr, wi = _block_weights(N, t, n_hi, coeffs, G)
    chi = chi_row(m, n_hi, sieve.spf).astype(np.float64)
    val = abs(complex(np.dot(chi, wr), np.dot(chi, wi)))
    n0 = min(N, m * m * (1.0 + abs(t)) ** 2 / N)
    return val, math.sqrt(max(n0, 1.0)) * math.log(max(n0, 1.0) + 2.0)
