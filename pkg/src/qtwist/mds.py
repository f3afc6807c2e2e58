"""The shifted multiple Dirichlet series Z(alpha, beta, gamma; k1, q).

Z is evaluated three independent ways inside its absolute-convergence
region: a direct truncated triple sum, an Euler product of per-prime local
factors, and the factored form L(1/2+alpha) L(1/2+beta) Y.  The diagonal
double sums over n1 n2 = square, with their zeta * sym^2-cubed
factorization, live here too.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .arith import Sieve, default_sieve, kronecker
from ._fast import z_pair_sum, squarefree_kernel_pairs
from .gauss import _local as gauss_local
from .lfun import l_twist_real, sym2_L_real
from .modform import EigenformCoefficients, Sym2Coefficients


@dataclass(frozen=True)
class ZPoint:
    alpha: complex
    beta: complex
    gamma: complex
    k1: int = 1
    q: int = 1

    def __post_init__(self):
        if self.k1 == 0:
            raise ValueError("k1 must be nonzero")
        k = abs(self.k1)
        d = 2
        while d * d <= k:
            if k % (d * d) == 0:
                raise ValueError("k1 must be squarefree")
            d += 1
        if self.q < 1:
            raise ValueError("q must be positive")

    @property
    def twist_conductor(self) -> int:
        """m = k1 when k1 = 1 mod 4, else 4 k1."""
        return self.k1 if self.k1 % 4 == 1 else 4 * self.k1


def local_factor_F(
    p: int, pt: ZPoint, coeffs: EigenformCoefficients, trunc: int = 30
) -> complex:
    """One Euler factor of Z: the prime-power triple sum at p (closed form
    (1 - p^{-2 gamma})^{-1} when p divides 2q)."""
    if trunc < 20:
        raise ValueError("trunc must be >= 20")
    if complex(pt.gamma).real < 0.55:
        raise ValueError("need Re gamma >= 0.55")
    if (2 * pt.q) % p == 0:
        return 1.0 / (1.0 - p ** (-2.0 * complex(pt.gamma)))
    lam_p = coeffs.lambda_prime_powers(p, trunc)
    v_k1 = 1 if pt.k1 % p == 0 else 0
    k_over_base = pt.k1 // p if v_k1 else pt.k1
    lp = math.log(p)
    total = 0.0 + 0.0j
    for k2 in range(trunc + 1):
        alpha_v = 2 * k2 + v_k1
        block = 0.0 + 0.0j
        for n1 in range(trunc + 1):
            for n2 in range(trunc + 1 - n1):
                beta_v = n1 + n2
                c, r = gauss_local(p, beta_v, alpha_v, k_over_base) if beta_v else (1, 1)
                if c == 0:
                    continue
                g = c * math.sqrt(r)
                block += (
                    lam_p[n1]
                    * lam_p[n2]
                    * np.exp(-(pt.alpha * n1 + pt.beta * n2) * lp)
                    * g
                    * np.exp(-beta_v * lp)
                )
        total += block * np.exp(-2.0 * pt.gamma * k2 * lp)
    return complex(total)


def Z_truncated(
    pt: ZPoint,
    coeffs: EigenformCoefficients,
    N: int,
    K: int,
    sieve: Sieve | None = None,
) -> complex:
    """Direct triple sum: odd n1, n2 <= N coprime to q, 1 <= k2 <= K."""
    sieve = sieve or default_sieve(max(N * N, 2))
    if sieve.bound < N * N:
        raise ValueError("sieve must cover n1*n2 <= N^2")
    if N > coeffs.n_max:
        raise ValueError("coefficient table too small")
    a, b = complex(pt.alpha), complex(pt.beta)
    total = 0.0 + 0.0j
    for k2 in range(1, K + 1):
        pair = z_pair_sum(
            N, pt.k1, k2, pt.q, a.real, a.imag, b.real, b.imag,
            coeffs.lam, sieve.spf,
        )
        total += pair * np.exp(-2.0 * pt.gamma * math.log(k2))
    return complex(total)


def Z_euler(
    pt: ZPoint,
    coeffs: EigenformCoefficients,
    prime_cutoff: int,
    trunc: int = 30,
    sieve: Sieve | None = None,
) -> complex:
    sieve = sieve or default_sieve(max(prime_cutoff, 2))
    spf = sieve.spf
    out = 1.0 + 0.0j
    for p in range(2, prime_cutoff + 1):
        if spf[p] == p:
            out *= local_factor_F(p, pt, coeffs, trunc)
    return out


def Y_factor(
    pt: ZPoint,
    coeffs: EigenformCoefficients,
    prime_cutoff: int,
    trunc: int = 30,
    sieve: Sieve | None = None,
) -> complex:
    """Y = prod_p F(p) / [L_p(1/2+alpha) L_p(1/2+beta)], the local L-factors
    taken for the twist by chi_m, m = pt.twist_conductor."""
    sieve = sieve or default_sieve(max(prime_cutoff, 2))
    spf = sieve.spf
    m = pt.twist_conductor
    out = 1.0 + 0.0j
    for p in range(2, prime_cutoff + 1):
        if spf[p] != p:
            continue
        f = local_factor_F(p, pt, coeffs, trunc)
        chi = kronecker(m, p)
        lp = float(coeffs.lam[p]) if p <= coeffs.n_max else 0.0
        for s in (0.5 + complex(pt.alpha), 0.5 + complex(pt.beta)):
            if chi != 0:
                f *= 1.0 - chi * lp * p**-s + (chi * chi) * p ** (-2 * s)
        out *= f
    return out


def z_factored(
    pt: ZPoint,
    coeffs: EigenformCoefficients,
    prime_cutoff: int = 2000,
    n_terms: int = 200_000,
    trunc: int = 30,
    sieve: Sieve | None = None,
) -> complex:
    """L(1/2+alpha, twist m) L(1/2+beta, twist m) Y, all factors real-point
    Dirichlet series plus the finite Y product."""
    m = pt.twist_conductor
    a, b = complex(pt.alpha), complex(pt.beta)
    if abs(a.imag) > 1e-12 or abs(b.imag) > 1e-12:
        raise ValueError("factored side implemented for real shifts only")
    la, _ = l_twist_real(m, 0.5 + a.real, coeffs, n_terms, sieve)
    lb, _ = l_twist_real(m, 0.5 + b.real, coeffs, n_terms, sieve)
    y = Y_factor(pt, coeffs, prime_cutoff, trunc, sieve)
    return la * lb * y


def z_truncation_estimate(pt: ZPoint, N: int, K: int) -> float:
    """Crude upper-style estimate of |Z - Z_truncated| from the n-tails
    (|lambda(n)| <= d(n) <= 2 sqrt(n), |G_k(n)| <= n) and the k2-tail."""
    a = min(complex(pt.alpha).real, complex(pt.beta).real)
    g = complex(pt.gamma).real
    n_tail = 8.0 * (math.log(N + 2.0) + 2.0) * N ** (0.5 - a) / max(a - 0.5, 0.1)
    k_tail = K ** (1.0 - 2.0 * g) / max(2.0 * g - 1.0, 0.1)
    return n_tail + 4.0 * k_tail


@dataclass(frozen=True)
class LocalFactorReport:
    p: int
    direct: complex
    factored: complex
    deviation: float


def local_factor_reports(
    pt: ZPoint,
    coeffs: EigenformCoefficients,
    primes: list[int],
    trunc: int = 30,
) -> list[LocalFactorReport]:
    """Per-prime comparison of the triple sum against the two-truncation
    self-estimate (trunc vs trunc+10)."""
    out = []
    for p in primes:
        direct = local_factor_F(p, pt, coeffs, trunc)
        refined = local_factor_F(p, pt, coeffs, trunc + 10)
        out.append(
            LocalFactorReport(
                p=p, direct=direct, factored=refined,
                deviation=abs(direct - refined),
            )
        )
    return out


def write_local_factor_csv(reports: list[LocalFactorReport], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "direct_re", "direct_im", "factored_re",
                    "factored_im", "deviation"])
        for r in reports:
            w.writerow([r.p, repr(r.direct.real), repr(r.direct.imag),
                        repr(r.factored.real), repr(r.factored.imag),
                        repr(r.deviation)])


# ---------------------------------------------------------------------------
# diagonal double sums over n1 n2 = square


def diagonal_series_G(
    variant: int,
    u: float,
    v: float,
    N: int,
    coeffs: EigenformCoefficients,
    sieve: Sieve | None = None,
) -> float:
    """Truncated sum over odd n1, n2 <= N with n1 n2 a perfect square of
    lam(n1) lam(n2) n1^{-1/2-u} n2^{-1/2-v} prod_{p | n1 n2} w(p);
    w(p) = 1 - 1/p (variant 1) or 1 - 1/(p+1) (variant 2)."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if N > coeffs.n_max:
        raise ValueError("coefficient table too small")
    sieve = sieve or default_sieve(max(N, 2))
    return float(
        squarefree_kernel_pairs(N, u, v, coeffs.lam, sieve.spf, variant)
    )


def diagonal_factored(
    u: float,
    v: float,
    coeffs: EigenformCoefficients,
    sym2: Sym2Coefficients,
    prime_cutoff: int = 10**5,
) -> float:
    """zeta(1+u+v) L(1+2u, sym^2) L(1+2v, sym^2) L(1+u+v, sym^2) H2(u,v)."""
    from .lfun import H2_at

    z = float(mpmath.zeta(1.0 + u + v))
    l2u, _ = sym2_L_real(sym2, 1.0 + 2 * u)
    l2v, _ = sym2_L_real(sym2, 1.0 + 2 * v)
    luv, _ = sym2_L_real(sym2, 1.0 + u + v)
    h2, _ = H2_at(u, v, coeffs, prime_cutoff)
    return z * l2u * l2v * luv * h2
