"""Quadratic Gauss-type sums G_k(n) for odd n.

G_k(n) = ((1-i)/2 + (-1/n)(1+i)/2) * sum_{a mod n} (a/n) e(ak/n).

The sum is real, multiplicative in n, and each local factor at an odd
prime power is one of five closed-form cases depending on v_p(k) vs
v_p(n).  The exact value is an integer times the square root of a
squarefree integer; both representations (exact and float) are exposed,
along with a direct complex-exponential evaluation used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import Sieve, default_sieve, kronecker
from ._fast import jacobi_rows_brute

# sentinel exponent used for v_p(0)
ALPHA_INF = 10**9


@dataclass(frozen=True)
class GaussSumExact:
    """Exact value coeff * sqrt(radicand), radicand squarefree positive."""

    coeff: int
    radicand: int

    def __post_init__(self):
        if self.radicand < 1:
            raise ValueError("radicand must be positive")

    @property
    def value(self) -> float:
        return self.coeff * math.sqrt(self.radicand)

    def __bool__(self) -> bool:
        return self.coeff != 0


def _local(p: int, beta: int, alpha: int, k_over: int) -> tuple[int, int]:
    """(coeff, radicand) of the factor at p^beta; radicand is 1 or p."""
    if beta <= alpha:
        if beta % 2 == 1:
            return 0, 1
        return (p - 1) * p ** (beta - 1), 1
    if beta == alpha + 1:
        if beta % 2 == 0:
            return -(p**alpha), 1
        return kronecker(k_over, p) * p**alpha, p
    return 0, 1


def gauss_closed(k: int, n: int, sieve: Sieve | None = None) -> GaussSumExact:
    """Closed-form G_k(n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    sieve = sieve or default_sieve(max(n, 2))
    coeff = 1
    radicand = 1
    for p, beta in sieve.factorize(n).factors:
        if k == 0:
            alpha, k_over = ALPHA_INF, 0
        else:
            alpha = 0
            kk = abs(k)
            while kk % p == 0:
                kk //= p
                alpha += 1
            # keep the sign of k in the residue used for the symbol
            k_over = (k // p**alpha) if k != 0 else 0
        c, r = _local(p, beta, alpha, k_over)
        if c == 0:
            return GaussSumExact(0, 1)
        coeff *= c
        radicand *= r
    return GaussSumExact(coeff, radicand)


def gauss_brute(k: int, n: int) -> complex:
    """Direct evaluation of the defining exponential sum (oracle use)."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    jac = jacobi_rows_brute(n).astype(np.float64)
    a = np.arange(n)
    expo = np.exp(2j * np.pi * ((a * (k % n)) % n) / n)
    s = complex(np.dot(jac, expo))
    eps = 0.5 * (1 - 1j) + kronecker(-1, n) * 0.5 * (1 + 1j)
    return eps * s


def gauss_value(k: int, n: int, sieve: Sieve | None = None) -> float:
    return gauss_closed(k, n, sieve).value


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n
