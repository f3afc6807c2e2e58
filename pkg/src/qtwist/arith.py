"""Integer arithmetic substrate.

Kronecker symbols, sieve-backed factorization, and enumeration of the
twist moduli 8d and of fundamental discriminants.  All functions are pure;
the smallest-prime-factor sieve is built once and then only read.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

DEFAULT_SIEVE_BOUND = 10**7


def kronecker(m: int, n: int) -> int:
    """Kronecker symbol (m/n), extended to all integers n.

    Convention for n = 0: (m/0) = 1 if m = +-1 and 0 otherwise.
    """
    if n == 0:
        return 1 if m in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if m < 0:
            sign = -1
    # factor out twos from n
    if n % 2 == 0:
        if m % 2 == 0:
            return 0
        t2 = 0
        while n % 2 == 0:
            n //= 2
            t2 += 1
        if t2 % 2 == 1 and m % 8 in (3, 5):
            sign = -sign
    # now n odd positive; standard Jacobi reciprocity loop
    m %= n
    while m != 0:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                sign = -sign
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            sign = -sign
        m %= n
    return sign if n == 1 else 0


@dataclass(frozen=True)
class Factorization:
    """Exact factorization n = prod p^e with primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def mu(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    def phi(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= (p - 1) * p ** (e - 1)
        return out

    def num_divisors(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


class Sieve:
    """Smallest-prime-factor table up to ``bound``; trial division beyond."""

    def __init__(self, bound: int = DEFAULT_SIEVE_BOUND):
        if bound < 2:
            raise ValueError("sieve bound must be >= 2")
        self.bound = bound
        spf = np.zeros(bound + 1, dtype=np.int64)
        for p in range(2, int(bound**0.5) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        rest = np.nonzero(spf[2:] == 0)[0] + 2
        spf[rest] = rest
        self.spf = spf

    def factorize(self, n: int) -> Factorization:
        if n < 1:
            raise ValueError(f"factorize requires n >= 1, got {n}")
        factors = []
        m = n
        if m <= self.bound:
            spf = self.spf
            while m > 1:
                p = int(spf[m])
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                factors.append((p, e))
        else:
            d = 2
            while d * d <= m:
                if m % d == 0:
                    e = 0
                    while m % d == 0:
                        m //= d
                        e += 1
                    factors.append((d, e))
                d += 1 if d == 2 else 2
            if m > 1:
                factors.append((m, 1))
        return Factorization(n, tuple(factors))

    def mu(self, n: int) -> int:
        return self.factorize(n).mu()

    def phi(self, n: int) -> int:
        return self.factorize(n).phi()

    def num_divisors(self, n: int) -> int:
        return self.factorize(n).num_divisors()

    def is_squarefree(self, n: int) -> bool:
        return self.factorize(n).is_squarefree()

    def squarefree_table(self, n_max: int) -> np.ndarray:
        """Boolean array sf[0..n_max]; sf[n] iff n squarefree (sf[0] False)."""
        sf = np.ones(n_max + 1, dtype=bool)
        sf[0] = False
        for p in range(2, int(n_max**0.5) + 1):
            if self.spf[p] == p:
                sf[p * p :: p * p] = False
        return sf

    def divisor_count_table(self, n_max: int) -> np.ndarray:
        d = np.zeros(n_max + 1, dtype=np.int64)
        for k in range(1, n_max + 1):
            d[k::k] += 1
        return d


_default_sieve: Sieve | None = None
_sieve_lock = threading.Lock()


def default_sieve(bound: int = DEFAULT_SIEVE_BOUND) -> Sieve:
    """Shared read-only sieve, grown on demand."""
    global _default_sieve
    with _sieve_lock:
        if _default_sieve is None or _default_sieve.bound < bound:
            _default_sieve = Sieve(bound)
        return _default_sieve


def enumerate_twist_moduli(X: float, sieve: Sieve | None = None) -> list[int]:
    """All odd squarefree d with 0 < 8d < X, ascending."""
    if X < 8:
        return []
    d_max = int((X - 1e-9) // 8)
    if 8 * d_max >= X:
        d_max -= 1
    if d_max < 1:
        return []
    sieve = sieve or default_sieve(max(d_max, 2))
    sf = sieve.squarefree_table(d_max)
    return [d for d in range(1, d_max + 1, 2) if sf[d]]


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """m = 1 mod 4 squarefree, or 4m' with m' squarefree, m' = 2,3 mod 4."""

    m: int
    kind: str  # "odd-squarefree-1mod4" or "four-times-squarefree"

    def __post_init__(self):
        if not is_fundamental_discriminant(self.m):
            raise ValueError(f"{self.m} is not a fundamental discriminant")


def is_fundamental_discriminant(m: int, sieve: Sieve | None = None) -> bool:
    if m == 0:
        return False
    sieve = sieve or default_sieve(max(abs(m), 2))
    if m % 4 == 1:
        return sieve.is_squarefree(abs(m))
    if m % 4 == 0:
        mp = m // 4
        return mp % 4 in (2, 3) and sieve.is_squarefree(abs(mp))
    return False


def _fd_kind(m: int) -> str:
    return "odd-squarefree-1mod4" if m % 4 == 1 else "four-times-squarefree"


def enumerate_fundamental_discriminants(
    M: float, both_signs: bool = False, sieve: Sieve | None = None
) -> list[FundamentalDiscriminant]:
    """Every fundamental discriminant m with M <= |m| < 2M, ascending in m."""
    if M < 1:
        raise ValueError("M must be >= 1")
    hi = int(np.ceil(2 * M)) + 1
    sieve = sieve or default_sieve(max(hi, 2))
    lo = int(np.ceil(M))
    out = []
    signs = (1, -1) if both_signs else (1,)
    for a in range(lo, hi):
        if not (M <= a < 2 * M):
            continue
        for s in signs:
            m = s * a
            if is_fundamental_discriminant(m, sieve):
                out.append(FundamentalDiscriminant(m, _fd_kind(m)))
    out.sort(key=lambda f: f.m)
    return out
