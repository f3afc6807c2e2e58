"""Twisted central L-values, functional-equation checks, and the
Euler-product constants entering the second-moment prediction.

Central values come from the single-sum approximate functional equation
with the incomplete-gamma kernel; truncation lengths carry rigorous tail
bounds.  Values at real points to the right of the critical strip use the
plain Dirichlet series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import gammaincc

from .arith import Sieve, default_sieve, is_fundamental_discriminant
from ._fast import afe_sum, chi_row, twist_values_batch
from .kernels import GraveKernel, PartitionG, afe_sign
from .modform import EigenformCoefficients, Sym2Coefficients

KAPPA = 12
TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# truncation control


def afe_tail_bound(q: float, n_cut: int, kappa: int = KAPPA) -> float:
    """Upper bound on 2 sum_{n>n_cut} |lambda(n)| n^{-1/2} W(n/q).

    Uses |lambda(n)| <= d(n) <= 2 sqrt(n) and the exact integral of the
    regularized incomplete gamma: int_z^inf Q(a,t) dt = a Q(a+1,z) - z Q(a,z).
    """
    m = kappa // 2
    z = TWO_PI * n_cut / q
    val = 4.0 * (q / TWO_PI) * (m * gammaincc(m + 1, z) - z * gammaincc(m, z))
    return max(float(val), 0.0)


def n_cutoff(q: float, tol: float, kappa: int = KAPPA) -> int:
    """Smallest convenient truncation with afe_tail_bound < tol."""
    n = max(50, int(math.ceil(q * (3.0 + math.log(1.0 / tol)) / TWO_PI)))
    while afe_tail_bound(q, n, kappa) >= tol:
        n = int(n * 1.2) + 8
    return n


# ---------------------------------------------------------------------------
# central values


@dataclass(frozen=True)
class TwistLValue:
    d: int
    value: float
    n_cut: int
    tail_bound: float


def l_half_twist(
    d: int,
    coeffs: EigenformCoefficients,
    tol: float = 1e-9,
    sieve: Sieve | None = None,
) -> TwistLValue:
    """L(1/2) for the twist by the even character of conductor 8d,
    d odd squarefree positive."""
    if d <= 0 or d % 2 == 0:
        raise ValueError("d must be odd and positive")
    q = 8 * d
    n_cut = n_cutoff(q, tol)
    if n_cut > coeffs.n_max:
        raise ValueError(
            f"coefficient table ({coeffs.n_max}) shorter than truncation {n_cut}"
        )
    sieve = sieve or default_sieve(max(n_cut, 2))
    chi = chi_row(q, n_cut, sieve.spf)
    inv_sqrt = _inv_sqrt_table(coeffs.n_max)
    val = 2.0 * afe_sum(float(q), n_cut, coeffs.lam, chi, inv_sqrt, KAPPA // 2)
    return TwistLValue(d=d, value=float(val), n_cut=n_cut,
                       tail_bound=afe_tail_bound(q, n_cut))


_inv_sqrt_cache: dict[int, np.ndarray] = {}


def _inv_sqrt_table(n_max: int) -> np.ndarray:
    t = _inv_sqrt_cache.get(n_max)
    if t is None:
        n = np.arange(n_max + 1, dtype=np.float64)
        n[0] = 1.0
        t = 1.0 / np.sqrt(n)
        _inv_sqrt_cache.clear()  # keep at most one table resident
        _inv_sqrt_cache[n_max] = t
    return t


def l_half_twist_batch(
    ds: np.ndarray,
    coeffs: EigenformCoefficients,
    tol: float = 1e-6,
    sieve: Sieve | None = None,
    caln: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Central values for many d at once (parallel over d, per-d
    deterministic).  caln overrides the kernel scale (A-part cutoff);
    returns (values, n_cuts)."""
    ds = np.asarray(ds, dtype=np.int64)
    qs = 8.0 * ds
    # the short-sum kernel scale is capped at the conductor scale 8d, so
    # caln = 8d recovers the full value exactly
    scales = np.minimum(caln, qs) if caln else qs
    n_cuts = np.empty(len(ds), dtype=np.int64)
    for i in range(len(ds)):
        n_cuts[i] = n_cutoff(scales[i], tol)
    if n_cuts.max(initial=0) > coeffs.n_max:
        raise ValueError("coefficient table too small for this batch")
    sieve = sieve or default_sieve(int(max(n_cuts.max(), 2)))
    inv_sqrt = _inv_sqrt_table(coeffs.n_max)
    vals = twist_values_batch(
        ds, n_cuts, scales, coeffs.lam, inv_sqrt, sieve.spf, KAPPA // 2
    )
    return vals, n_cuts


def l_value_fundamental(
    m: int,
    coeffs: EigenformCoefficients,
    tol: float = 1e-9,
    sieve: Sieve | None = None,
) -> TwistLValue:
    """L(1/2) for the twist by any fundamental discriminant m; vanishes
    identically when the functional-equation sign is -1."""
    if not is_fundamental_discriminant(m):
        raise ValueError(f"{m} is not a fundamental discriminant")
    sign = afe_sign(m, KAPPA)
    q = abs(m)
    n_cut = n_cutoff(q, tol)
    if n_cut > coeffs.n_max:
        raise ValueError("coefficient table too small")
    sieve = sieve or default_sieve(max(n_cut, 2))
    chi = chi_row(m, n_cut, sieve.spf)
    inv_sqrt = _inv_sqrt_table(coeffs.n_max)
    s = afe_sum(float(q), n_cut, coeffs.lam, chi, inv_sqrt, KAPPA // 2)
    return TwistLValue(d=m, value=float((1 + sign) * s), n_cut=n_cut,
                       tail_bound=afe_tail_bound(q, n_cut))


# ---------------------------------------------------------------------------
# functional-equation verification


def verify_functional_equation(
    m: int,
    N: float,
    z: complex,
    coeffs: EigenformCoefficients,
    G: PartitionG,
    kernel: GraveKernel | None = None,
    sieve: Sieve | None = None,
    tol: float = 1e-9,
) -> float:
    """Residual |LHS - RHS| of the smoothed-sum identity
    sum lam(n) n^{-1/2-z} (m/n) G(n/N)
      = sign(m) (2pi/|m|)^{2z} sum lam(n) n^{-1/2+z} (m/n) K(4pi^2 nN/m^2),
    K the vertical-line kernel.  The sign factor i^kappa eps(m) is needed
    for the identity to close for m < 0."""
    if not is_fundamental_discriminant(m):
        raise ValueError(f"{m} is not a fundamental discriminant")
    kernel = kernel or GraveKernel(G, KAPPA, tol=tol)
    table = kernel.tabulate(z)
    scale = 4.0 * math.pi**2 * N / m**2
    n_lhs = int(2 * N) + 1
    n_rhs = int(table.x_max / scale) + 1
    if max(n_lhs, n_rhs) > coeffs.n_max:
        raise ValueError("coefficient table too small for the two sums")
    sieve = sieve or default_sieve(max(n_lhs, n_rhs, abs(m), 2))
    chi = chi_row(m, max(n_lhs, n_rhs, 8), sieve.spf).astype(np.float64)

    n = np.arange(1, n_lhs + 1, dtype=np.float64)
    w = chi[1 : n_lhs + 1] * coeffs.lam[1 : n_lhs + 1] * G(n / N)
    lhs = complex(np.sum(w * np.exp(-(0.5 + z) * np.log(n))))

    sign = afe_sign(m, KAPPA)
    pref = sign * np.exp(2.0 * z * math.log(TWO_PI / abs(m)))
    n = np.arange(1, n_rhs + 1, dtype=np.float64)
    w = chi[1 : n_rhs + 1] * coeffs.lam[1 : n_rhs + 1]
    kvals = np.zeros(n_rhs, dtype=np.complex128)
    nz = w != 0.0
    kvals[nz] = table.values(n[nz] * scale)
    rhs = complex(np.sum(w * np.exp((z - 0.5) * np.log(n)) * kvals))
    return float(abs(lhs - pref * rhs))


def completed_lambda(
    m: int,
    t: float,
    coeffs: EigenformCoefficients,
    tol: float = 1e-9,
    sieve: Sieve | None = None,
) -> complex:
    """Completed value (|m|/2pi)^s Gamma(s+(kappa-1)/2) L(s) at s = 1/2+it,
    L computed by the two-sided incomplete-gamma expansion."""
    s = 0.5 + 1j * t
    q = abs(m)
    a = (KAPPA - 1) / 2.0
    n_cut = n_cutoff(q, tol)
    sieve = sieve or default_sieve(max(n_cut, 2))
    chi = chi_row(m, n_cut, sieve.spf)
    sign = afe_sign(m, KAPPA)

    def partial(sv):
        acc = mpmath.mpc(0)
        av = sv + a
        for n in range(1, n_cut + 1):
            if chi[n] == 0:
                continue
            qn = mpmath.gammainc(av, TWO_PI * n / q, regularized=True)
            acc += coeffs.lam[n] * int(chi[n]) * qn * mpmath.power(n, -sv)
        return acc

    lval = partial(s) + sign * mpmath.power(q / TWO_PI, 1 - 2 * s) * (
        mpmath.gamma(1 - s + a) / mpmath.gamma(s + a)
    ) * partial(1 - s)
    lam_val = mpmath.power(q / TWO_PI, s) * mpmath.gamma(s + a) * lval
    return complex(lam_val)


# ---------------------------------------------------------------------------
# Dirichlet series at real points right of the critical strip


def l_twist_real(
    m: int,
    s: float,
    coeffs: EigenformCoefficients,
    n_terms: int = 200_000,
    sieve: Sieve | None = None,
) -> tuple[float, float]:
    """(value, tail bound) of sum lam(n) chi_m(n) n^{-s}, s > 3/2."""
    if s <= 1.5:
        raise ValueError("direct series needs s > 3/2")
    n_terms = min(n_terms, coeffs.n_max)
    sieve = sieve or default_sieve(max(n_terms, 2))
    chi = chi_row(m, n_terms, sieve.spf).astype(np.float64)
    n = np.arange(n_terms + 1, dtype=np.float64)
    n[0] = 1.0
    val = float(np.dot(coeffs.lam[: n_terms + 1] * chi, n**-s))
    tail = 2.0 * n_terms ** (1.5 - s) / (s - 1.5)  # |lam(n)| <= 2 sqrt(n)
    return val, tail


def sym2_L_real(sym2: Sym2Coefficients, s: float, n_terms: int | None = None
                ) -> tuple[float, float]:
    """(value, tail bound) of sum A(n) n^{-s}, s > 4/3."""
    if s <= 4.0 / 3.0:
        raise ValueError("direct series needs s > 4/3")
    n_terms = min(n_terms or sym2.n_max, sym2.n_max)
    n = np.arange(n_terms + 1, dtype=np.float64)
    n[0] = 1.0
    val = float(np.dot(sym2.A[: n_terms + 1], n**-s))
    # |A(n)| <= d_3(n) <= 5 n^{1/3}
    tail = 5.0 * n_terms ** (4.0 / 3.0 - s) / (s - 4.0 / 3.0)
    return val, tail


# ---------------------------------------------------------------------------
# Euler-product constants


def sym2_L1(sym2: Sym2Coefficients, Y: float = 1e4) -> tuple[float, float]:
    """Smoothed series sum A(n) e^{-n/Y} / n; returns (value, error estimate)
    with the estimate taken from the spread over Y, 2Y, 4Y."""
    need = int(30 * Y)
    if need > sym2.n_max:
        raise ValueError(f"need A(n) to {need}, table has {sym2.n_max}")

    def at(y):
        n = np.arange(1, int(30 * y) + 1, dtype=np.float64)
        return float(np.dot(sym2.A[1 : len(n) + 1], np.exp(-n / y) / n))

    if 120 * Y > sym2.n_max:
        return at(Y), abs(at(Y) - at(Y / 2))
    vals = [at(Y), at(2 * Y), at(4 * Y)]
    return vals[2], max(vals) - min(vals)


def sym2_L1_euler(coeffs: EigenformCoefficients, prime_cutoff: int = 10**5,
                  sieve: Sieve | None = None) -> float:
    """Independent slow oracle: prod_p [(1-x)(1-(lam(p)^2-2)x+x^2)]^{-1},
    x = 1/p."""
    sieve = sieve or default_sieve(max(prime_cutoff, 2))
    spf = sieve.spf
    log_sum = 0.0
    for p in range(2, prime_cutoff + 1):
        if spf[p] != p:
            continue
        x = 1.0 / p
        c = float(coeffs.lam[p]) ** 2 - 2.0
        log_sum -= math.log((1.0 - x) * (1.0 - c * x + x * x))
    return math.exp(log_sum)


def _sym2_inverse_local(lam_p: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(1-x)(1-(lam(p)^2-2)x+x^2) elementwise."""
    c = lam_p * lam_p - 2.0
    return (1.0 - x) * (1.0 - c * x + x * x)


def H2_at(
    u: float,
    v: float,
    coeffs: EigenformCoefficients,
    prime_cutoff: int = 10**5,
    k_max: int = 60,
    sieve: Sieve | None = None,
) -> tuple[float, float]:
    """The residual Euler product H2(u,v) with the zeta and sym^2-cubed
    local factors divided out; returns (value, tail estimate).

    The defining double sum runs over odd prime powers only, so p = 2
    contributes compensators alone.
    """
    if u < -0.2 or v < -0.2:
        raise ValueError("outside the implemented convergence region")
    sieve = sieve or default_sieve(max(prime_cutoff, 2))
    spf = sieve.spf
    primes = np.array(
        [p for p in range(3, prime_cutoff + 1) if spf[p] == p], dtype=np.int64
    )
    log_total = 0.0

    # p = 2 compensators
    l2 = float(coeffs.lam[2])
    log_total += math.log(1.0 - 2.0 ** -(1.0 + u + v))
    for expo in (1.0 + 2 * u, 1.0 + 2 * v, 1.0 + u + v):
        log_total += math.log(
            float(_sym2_inverse_local(np.array([l2]), np.array([2.0**-expo]))[0])
        )

    # odd primes, banded by how many prime-power terms matter
    bands = [(0, 20, 2 * k_max), (20, 100, 60), (100, 1000, 24), (1000, None, 12)]
    for lo, hi, e_max in bands:
        sel = primes >= lo
        if hi is not None:
            sel &= primes < hi
        ps = primes[sel].astype(np.float64)
        if len(ps) == 0:
            continue
        lam_pows = np.empty((e_max + 1, len(ps)))
        lam_pows[0] = 1.0
        lam_p = coeffs.lam[primes[sel]]
        if e_max >= 1:
            lam_pows[1] = lam_p
            for e in range(2, e_max + 1):
                lam_pows[e] = lam_p * lam_pows[e - 1] - lam_pows[e - 2]
        pu = ps ** -(0.5 + u)
        pv = ps ** -(0.5 + v)
        inner = np.zeros(len(ps))
        for i in range(e_max + 1):
            for j in range(i % 2, e_max + 1 - i, 2):
                if i + j == 0:
                    continue
                inner += lam_pows[i] * lam_pows[j] * pu**i * pv**j
        bracket = 1.0 + (1.0 - 1.0 / (ps + 1.0)) * inner
        comp = (
            (1.0 - ps ** -(1.0 + u + v))
            * _sym2_inverse_local(lam_p, ps ** -(1.0 + 2 * u))
            * _sym2_inverse_local(lam_p, ps ** -(1.0 + 2 * v))
            * _sym2_inverse_local(lam_p, ps ** -(1.0 + u + v))
        )
        log_total += float(np.sum(np.log(bracket * comp)))

    tail = 50.0 * 2.0 * prime_cutoff**-0.5 / math.log(prime_cutoff)
    return math.exp(log_total), tail


@dataclass(frozen=True)
class EulerConstants:
    L1_sym2: float
    H2_00: float
    C_f: float
    prime_cutoff: int
    tail_estimate: float


def constant_Cf(
    coeffs: EigenformCoefficients,
    sym2: Sym2Coefficients,
    prime_cutoff: int = 10**5,
    Y: float = 1e4,
) -> EulerConstants:
    """C_f = (2/pi^2) L(1, sym^2)^3 H2(0,0) with a propagated error estimate."""
    l1, l1_err = sym2_L1(sym2, Y)
    h2, h2_err = H2_at(0.0, 0.0, coeffs, prime_cutoff)
    cf = (2.0 / math.pi**2) * l1**3 * h2
    rel = 3.0 * l1_err / l1 + h2_err / h2
    return EulerConstants(
        L1_sym2=l1, H2_00=h2, C_f=cf, prime_cutoff=prime_cutoff,
        tail_estimate=cf * rel,
    )
