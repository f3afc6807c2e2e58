"""Numba-compiled hot loops.

Everything here is a plain numeric kernel: Kronecker symbols, character
rows, the AFE accumulation over n, character-sum double loops, and the
pair sum behind the truncated multiple Dirichlet series.  Python-level
wrappers with the domain types live in the sibling modules.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

TWO_PI = 2.0 * np.pi


@njit(cache=True)
def kronecker_jit(m: int, n: int) -> int:
    if n == 0:
        return 1 if (m == 1 or m == -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if m < 0:
            sign = -1
    if n % 2 == 0:
        if m % 2 == 0:
            return 0
        t2 = 0
        while n % 2 == 0:
            n //= 2
            t2 += 1
        r8 = m % 8
        if r8 < 0:
            r8 += 8
        if t2 % 2 == 1 and (r8 == 3 or r8 == 5):
            sign = -sign
    m %= n
    if m < 0:
        m += n
    while m != 0:
        while m % 2 == 0:
            m //= 2
            r = n % 8
            if r == 3 or r == 5:
                sign = -sign
        tmp = m
        m = n
        n = tmp
        if m % 4 == 3 and n % 4 == 3:
            sign = -sign
        m %= n
    if n == 1:
        return sign
    return 0


@njit(cache=True)
def chi_row(m: int, n_max: int, spf: np.ndarray) -> np.ndarray:
    """chi_m(n) = (m/n) for n = 0..n_max, built multiplicatively off the sieve."""
    out = np.zeros(n_max + 1, dtype=np.int8)
    out[0] = 1 if (m == 1 or m == -1) else 0
    if n_max >= 1:
        out[1] = 1
    chi_p = np.zeros(n_max + 1, dtype=np.int8)
    for n in range(2, n_max + 1):
        p = spf[n]
        if p == n:
            chi_p[n] = kronecker_jit(m, n)
            out[n] = chi_p[n]
        else:
            out[n] = out[n // p] * chi_p[p]
    return out


@njit(cache=True)
def w_half_poly(y: float, half_kappa: int) -> float:
    """exp(-y) * sum_{j<half_kappa} y^j / j!  (y = 2 pi x)."""
    if y > 700.0:
        return 0.0
    s = 1.0
    term = 1.0
    for j in range(1, half_kappa):
        term *= y / j
        s += term
    return np.exp(-y) * s


@njit(cache=True)
def afe_sum(
    q: float,
    n_cut: int,
    lam: np.ndarray,
    chi: np.ndarray,
    inv_sqrt: np.ndarray,
    half_kappa: int,
) -> float:
    """sum_{n<=n_cut} lam(n) chi(n) n^{-1/2} W_{1/2}(n/q)."""
    acc = 0.0
    comp = 0.0
    c = TWO_PI / q
    for n in range(1, n_cut + 1):
        ch = chi[n]
        if ch == 0:
            continue
        term = lam[n] * ch * inv_sqrt[n] * w_half_poly(c * n, half_kappa)
        # Kahan compensation keeps the fixed-order sum reproducible and tight
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc


@njit(cache=True, parallel=True)
def twist_values_batch(
    ds: np.ndarray,
    n_cuts: np.ndarray,
    caln: np.ndarray,
    lam: np.ndarray,
    inv_sqrt: np.ndarray,
    spf: np.ndarray,
    half_kappa: int,
) -> np.ndarray:
    """Central values 2*afe_sum for a batch of twist moduli 8d.

    caln[i] is the kernel scale (8d for the full value, or the A-cutoff).
    Each d is independent, so the result is identical for any thread count.
    """
    out = np.empty(len(ds), dtype=np.float64)
    for i in prange(len(ds)):
        d = ds[i]
        n_cut = n_cuts[i]
        chi = chi_row(8 * d, n_cut, spf)
        out[i] = 2.0 * afe_sum(caln[i], n_cut, lam, chi, inv_sqrt, half_kappa)
    return out


@njit(cache=True)
def char_sum_rows(
    ms: np.ndarray,
    n_lo: int,
    n_hi: int,
    weights_re: np.ndarray,
    weights_im: np.ndarray,
    spf: np.ndarray,
) -> float:
    """sum_m |sum_{n_lo<=n<=n_hi} weight(n) (m/n)|^2.

    weights arrays are indexed by n (length n_hi+1).
    """
    total = 0.0
    for j in range(len(ms)):
        m = ms[j]
        chi = chi_row(m, n_hi, spf)
        sr = 0.0
        si = 0.0
        for n in range(n_lo, n_hi + 1):
            ch = chi[n]
            if ch == 0:
                continue
            sr += ch * weights_re[n]
            si += ch * weights_im[n]
        total += sr * sr + si * si
    return total


@njit(cache=True)
def window_char_sum(
    m: int,
    n_hi: int,
    weights_re: np.ndarray,
    weights_im: np.ndarray,
    spf: np.ndarray,
) -> complex:
    """sum_{n<=n_hi} weight(n) (m/n) for one modulus m."""
    chi = chi_row(m, n_hi, spf)
    sr = 0.0
    si = 0.0
    for n in range(1, n_hi + 1):
        ch = chi[n]
        if ch == 0:
            continue
        sr += ch * weights_re[n]
        si += ch * weights_im[n]
    return complex(sr, si)


@njit(cache=True)
def gauss_case(p: int, beta: int, alpha: int, k_over: int) -> tuple:
    """One local factor of the Gauss-like sum closed form.

    Returns (rational_part, sqrt_p_flag): value = rational_part * p**0.5 if flag.
    alpha = v_p(k) (use a large sentinel for k = 0); k_over = k / p^alpha.
    """
    if beta <= alpha:
        if beta % 2 == 1:
            return (0.0, 0)
        phi = float(p - 1) * float(p) ** (beta - 1)
        return (phi, 0)
    if beta == alpha + 1:
        pa = float(p) ** alpha
        if beta % 2 == 0:
            return (-pa, 0)
        return (kronecker_jit(k_over, p) * pa, 1)
    return (0.0, 0)


ALPHA_INF = 10**9  # sentinel exponent for k = 0


@njit(cache=True)
def gauss_closed_value(k: int, n: int, spf: np.ndarray) -> float:
    """G_k(n) as a float, for odd n with n <= sieve bound."""
    val = 1.0
    sqrt_part = 1.0
    m = n
    while m > 1:
        p = spf[m]
        beta = 0
        while m % p == 0:
            m //= p
            beta += 1
        if k == 0:
            alpha = ALPHA_INF
            k_over = 0
        else:
            alpha = 0
            kk = k
            while kk % p == 0:
                kk //= p
                alpha += 1
            k_over = kk
        rat, has_sqrt = gauss_case(p, beta, alpha, k_over)
        if rat == 0.0:
            return 0.0
        val *= rat
        if has_sqrt:
            sqrt_part *= p
    return val * np.sqrt(sqrt_part)


@njit(cache=True)
def z_pair_sum(
    n_lim: int,
    k1: int,
    k2: int,
    q: int,
    alpha_re: float,
    alpha_im: float,
    beta_re: float,
    beta_im: float,
    lam: np.ndarray,
    spf: np.ndarray,
) -> complex:
    """sum over odd n1, n2 <= n_lim coprime to 2q of
    lam(n1) lam(n2) n1^{-alpha} n2^{-beta} G_{k1 k2^2}(n1 n2) / (n1 n2)."""
    k = k1 * k2 * k2
    acc = 0.0 + 0.0j
    for n1 in range(1, n_lim + 1, 2):
        if q > 1 and math.gcd(n1, q) != 1:
            continue
        l1 = lam[n1]
        if l1 == 0.0:
            continue
        f1 = l1 * np.exp(-alpha_re * np.log(n1)) * np.exp(
            -1j * alpha_im * np.log(n1)
        )
        for n2 in range(1, n_lim + 1, 2):
            if q > 1 and math.gcd(n2, q) != 1:
                continue
            l2 = lam[n2]
            if l2 == 0.0:
                continue
            g = gauss_closed_value(k, n1 * n2, spf)
            if g == 0.0:
                continue
            ln2 = np.log(n2)
            f2 = l2 * np.exp(-beta_re * ln2) * np.exp(-1j * beta_im * ln2)
            acc += f1 * f2 * (g / (n1 * n2))
    return acc


@njit(cache=True)
def squarefree_kernel_pairs(
    n_lim: int,
    u: float,
    v: float,
    lam: np.ndarray,
    spf: np.ndarray,
    weight_variant: int,
) -> float:
    """sum over odd n1, n2 <= n_lim with n1 n2 a perfect square of
    lam(n1) lam(n2) n1^{-1/2-u} n2^{-1/2-v} prod_{p | n1 n2} w(p),
    w(p) = 1 - 1/p (variant 1) or 1 - 1/(p+1) (variant 2).

    Parametrized as n1 = t a^2, n2 = t b^2 with t odd squarefree.
    """
    total = 0.0
    t = 1
    while t <= n_lim:
        # t odd squarefree check via spf
        m = t
        ok = True
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e > 1:
                ok = False
                break
        if ok:
            a_max = int(np.sqrt(n_lim / t) + 1e-9)
            for a in range(1, a_max + 1, 2):
                n1 = t * a * a
                if n1 > n_lim:
                    continue
                l1 = lam[n1]
                if l1 == 0.0:
                    continue
                w1 = l1 * np.exp(-(0.5 + u) * np.log(n1))
                for b in range(1, a_max + 1, 2):
                    n2 = t * b * b
                    if n2 > n_lim:
                        continue
                    l2 = lam[n2]
                    if l2 == 0.0:
                        continue
                    w2 = l2 * np.exp(-(0.5 + v) * np.log(n2))
                    # weight over primes of n1*n2 = primes of t*a*b
                    w = 1.0
                    m = t * a * b
                    while m > 1:
                        p = spf[m]
                        while m % p == 0:
                            m //= p
                        if weight_variant == 1:
                            w *= 1.0 - 1.0 / p
                        else:
                            w *= 1.0 - 1.0 / (p + 1.0)
                    total += w1 * w2 * w
        t += 2
    return total


@njit(cache=True)
def jacobi_rows_brute(n: int) -> np.ndarray:
    """(a/n) for a = 0..n-1, n odd positive."""
    out = np.empty(n, dtype=np.int8)
    for a in range(n):
        out[a] = kronecker_jit(a, n)
    return out
