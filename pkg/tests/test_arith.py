import math

from hypothesis import given, settings
from hypothesis import strategies as st

from qtwist.arith import (
    default_sieve,
    enumerate_fundamental_discriminants,
    enumerate_twist_moduli,
    is_fundamental_discriminant,
    kronecker,
)


def kronecker_oracle(a: int, n: int) -> int:
    """Independent slow Kronecker symbol: Euler's criterion at odd primes,
    the supplementary rules at 2 and -1, and the n = 0 convention."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    d = 3
    while n > 1:
        while d * d <= n and n % d:
            d += 2
        p = d if d * d <= n else n
        while n % p == 0:
            n //= p
            e = pow(a % p, (p - 1) // 2, p)
            if e == 0:
                return 0
            if e == p - 1:
                result = -result
    return result


class TestKronecker:
    def test_small_table(self):
        assert kronecker(1, 1) == 1
        assert kronecker(2, 7) == 1
        assert kronecker(3, 7) == -1
        assert kronecker(2, 15) == 1
        assert kronecker(-1, 5) == 1
        assert kronecker(-1, 7) == -1
        assert kronecker(5, 0) == 0
        assert kronecker(1, 0) == 1
        assert kronecker(-1, 0) == 1
        assert kronecker(6, 3) == 0

    @given(st.integers(-500, 500), st.integers(-500, 500))
    @settings(max_examples=300, deadline=None)
    def test_matches_oracle(self, a, n):
        assert kronecker(a, n) == kronecker_oracle(a, n)

    @given(st.integers(-300, 300), st.integers(1, 200), st.integers(1, 200))
    @settings(max_examples=200, deadline=None)
    def test_multiplicative_bottom(self, a, m, n):
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)

    @given(st.integers(-200, 200), st.integers(-200, 200), st.integers(1, 150))
    @settings(max_examples=200, deadline=None)
    def test_multiplicative_top(self, a, b, n):
        assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)

    @given(st.integers(1, 400), st.integers(0, 400))
    @settings(max_examples=200, deadline=None)
    def test_square_numerator(self, a, r):
        n = 2 * r + 1
        expected = 0 if math.gcd(a, n) > 1 else 1
        assert kronecker(a * a, n) == expected


class TestSieve:
    def test_factorize(self):
        s = default_sieve(10**4)
        f = s.factorize(360)
        assert f.factors == ((2, 3), (3, 2), (5, 1))
        assert f.num_divisors() == 24
        assert f.phi() == 96
        assert f.mu() == 0
        assert not f.is_squarefree()

    def test_squarefree_table(self):
        s = default_sieve(1000)
        t = s.squarefree_table(100)
        for n in (1, 2, 6, 15, 97):
            assert t[n]
        for n in (4, 12, 99, 100):
            assert not t[n]
        assert not t[0]

    @given(st.integers(2, 50_000))
    @settings(max_examples=150, deadline=None)
    def test_spf_is_smallest_factor(self, n):
        s = default_sieve(50_000)
        p = int(s.spf[n])
        assert n % p == 0
        for q in range(2, min(p, 40)):
            assert n % q != 0

    def test_divisor_count_table(self):
        s = default_sieve(100)
        d = s.divisor_count_table(60)
        assert d[1] == 1 and d[12] == 6 and d[60] == 12


class TestEnumeration:
    def test_twist_moduli_small(self):
        assert enumerate_twist_moduli(100.0) == [1, 3, 5, 7, 11]
        assert enumerate_twist_moduli(7.9) == []
        # strict inequality at the boundary
        assert 3 not in enumerate_twist_moduli(24.0)

    def test_fundamental_block(self):
        fds = [f.m for f in enumerate_fundamental_discriminants(5, both_signs=True)]
        assert fds == sorted(fds)
        assert all(5 <= abs(m) < 10 for m in fds)
        assert all(is_fundamental_discriminant(m) for m in fds)
        assert 5 in fds and -7 in fds and -8 in fds and 8 in fds

    @given(st.integers(-400, 400))
    @settings(max_examples=300, deadline=None)
    def test_fundamental_definition(self, m):
        def squarefree(k):
            k = abs(k)
            d = 2
            while d * d <= k:
                if k % (d * d) == 0:
                    return False
                d += 1
            return True

        expected = False
        if m != 0 and m % 4 == 1 and squarefree(m):
            expected = True
        if m != 0 and m % 4 == 0 and (m // 4) % 4 in (2, 3) and squarefree(m // 4):
            expected = True
        assert is_fundamental_discriminant(m) == expected


def test_sieve_grows_on_demand():
    s = default_sieve(200_000)
    assert s.bound >= 200_000
    assert int(s.spf[199_999]) >= 2
