import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtwist.modform import (
    build_delta_coefficients,
    load_coefficient_file,
    save_coefficient_file,
    sym2_coefficients,
    sym2_local,
    tau_coefficients,
)

# q prod (1-q^n)^24 expanded longhand (independent oracle, first 30 terms)
TAU_ORACLE = {
    1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048, 7: -16744,
    8: 84480, 9: -113643, 10: -115920, 11: 534612, 12: -370944,
    13: -577738, 14: 401856, 15: 1217160, 16: 987136, 17: -6905934,
    18: 2727432, 19: 10661420, 20: -7109760, 21: -4219488, 22: -12830688,
    23: 18643272, 24: 21288960, 25: -25499225, 26: 13865712,
    27: -73279080, 28: 24647168, 29: 128406630, 30: -29211840,
}


def tau_series_oracle(n_max: int) -> list[int]:
    """Direct dense polynomial expansion of q prod (1-q^n)^24 (slow)."""
    poly = [0] * n_max
    poly[0] = 1
    for k in range(1, n_max):
        for _ in range(24):
            # multiply by (1 - q^k)
            for i in range(n_max - 1, k - 1, -1):
                poly[i] -= poly[i - k]
    return [0] + poly[:n_max]


class TestTau:
    def test_oracle_table(self):
        tau = tau_coefficients(30)
        for n, v in TAU_ORACLE.items():
            assert tau[n] == v

    def test_against_series_expansion(self):
        assert tau_coefficients(120) == tau_series_oracle(120)

    def test_multiplicativity(self, coeffs_small):
        tau = coeffs_small.tau
        for m, n in ((2, 3), (3, 5), (4, 9), (8, 27), (25, 49), (11, 13),
                     (16, 81), (121, 169)):
            assert math.gcd(m, n) == 1
            assert tau[m * n] == tau[m] * tau[n]

    def test_hecke_prime_square(self, coeffs_small):
        tau = coeffs_small.tau
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 101, 211, 331):
            assert tau[p * p] == tau[p] ** 2 - p**11

    def test_deligne_bound(self, coeffs_small):
        from qtwist.arith import default_sieve

        lam = np.abs(coeffs_small.lam[1:50_001])
        d = default_sieve(50_000).divisor_count_table(50_000)[1:]
        assert np.all(lam <= d + 1e-9)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            tau_coefficients(0)


class TestLambda:
    def test_normalization(self, coeffs_small):
        assert coeffs_small.lam[1] == 1.0
        assert abs(coeffs_small.lam[2] - (-24 / 2**5.5)) < 1e-15

    @given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(2, 12))
    @settings(max_examples=40, deadline=None)
    def test_prime_power_recursion_matches_table(self, coeffs_small, p, e):
        while p**e > coeffs_small.n_max:
            e -= 1
        vals = coeffs_small.lambda_prime_powers(p, e)
        assert abs(vals[e] - coeffs_small.lam[p**e]) < 1e-9 * max(1.0, abs(vals[e]))


class TestPersistence:
    def test_roundtrip(self, tmp_path, coeffs_small):
        path = str(tmp_path / "c.txt")
        save_coefficient_file(coeffs_small, path)
        back = load_coefficient_file(path)
        assert back.kappa == coeffs_small.kappa
        assert back.n_max == coeffs_small.n_max
        assert back.tau == coeffs_small.tau

    def test_rejects_corrupt(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("12,5\n1,7\n2,-24\n")
        with pytest.raises(ValueError):
            load_coefficient_file(str(path))


class TestSym2:
    def test_local_values(self, coeffs_small):
        # A(p) = lam(p)^2 - 1  (Hecke relation lam(p^2) = lam(p)^2 - 1 and
        # A(p) = lam(p^2))
        for p in (2, 3, 5, 7, 11):
            vals = sym2_local(coeffs_small, p, 2)
            assert abs(vals[1] - (coeffs_small.lam[p] ** 2 - 1)) < 1e-12

    def test_A_equals_lambda_square_on_primes(self, coeffs_small):
        sym2 = sym2_coefficients(coeffs_small, 2000)
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
            assert abs(sym2.A[p] - coeffs_small.lam[p * p]) < 1e-10

    def test_multiplicative(self, coeffs_small):
        sym2 = sym2_coefficients(coeffs_small, 5000)
        for m, n in ((2, 3), (4, 9), (5, 49), (8, 81), (25, 27)):
            assert abs(sym2.A[m * n] - sym2.A[m] * sym2.A[n]) < 1e-9
