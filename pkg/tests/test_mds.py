import math

import pytest

from qtwist.mds import (
    LocalFactorReport,
    ZPoint,
    Z_euler,
    Z_truncated,
    Y_factor,
    diagonal_factored,
    diagonal_series_G,
    local_factor_F,
    local_factor_reports,
    write_local_factor_csv,
    z_factored,
    z_truncation_estimate,
)


class TestZPoint:
    def test_validation(self):
        with pytest.raises(ValueError):
            ZPoint(1.0, 1.0, 1.0, k1=0)
        with pytest.raises(ValueError):
            ZPoint(1.0, 1.0, 1.0, k1=12)
        with pytest.raises(ValueError):
            ZPoint(1.0, 1.0, 1.0, q=0)

    def test_twist_conductor(self):
        assert ZPoint(1, 1, 1, k1=5).twist_conductor == 5
        assert ZPoint(1, 1, 1, k1=3).twist_conductor == 12
        assert ZPoint(1, 1, 1, k1=-1).twist_conductor == -4
        assert ZPoint(1, 1, 1, k1=-3).twist_conductor == -3


class TestLocalFactors:
    def test_bad_prime_closed_form(self, coeffs_small):
        pt = ZPoint(1.0, 1.0, 1.0, k1=1, q=3)
        for p in (2, 3):
            expect = 1.0 / (1.0 - p**-2.0)
            assert abs(local_factor_F(p, pt, coeffs_small) - expect) < 1e-12
        assert abs(local_factor_F(5, pt, coeffs_small) - 1.0) > 1e-3

    def test_truncation_stable(self, coeffs_small):
        pt = ZPoint(0.8, 0.9, 1.0)
        for p in (3, 5, 7):
            a = local_factor_F(p, pt, coeffs_small, trunc=24)
            b = local_factor_F(p, pt, coeffs_small, trunc=40)
            assert abs(a - b) < 1e-10

    def test_reports_and_csv(self, tmp_path, coeffs_small):
        pt = ZPoint(1.0, 1.0, 1.0)
        reports = local_factor_reports(pt, coeffs_small, [3, 5, 7])
        assert [r.p for r in reports] == [3, 5, 7]
        assert all(r.deviation < 1e-10 for r in reports)
        path = str(tmp_path / "lf.csv")
        write_local_factor_csv(reports, path)
        lines = open(path).read().strip().splitlines()
        assert len(lines) == 4 and lines[0].startswith("p,")


class TestZThreeWays:
    def test_truncated_vs_euler(self, coeffs_small, sieve_mid):
        pt = ZPoint(1.2, 1.1, 1.2)
        zt = Z_truncated(pt, coeffs_small, N=400, K=200, sieve=sieve_mid)
        ze = Z_euler(pt, coeffs_small, prime_cutoff=400)
        assert abs(zt - ze) < z_truncation_estimate(pt, 400, 200)

    def test_ladder_monotone(self, coeffs_small, sieve_mid):
        pt = ZPoint(1.2, 1.1, 1.2)
        ze = Z_euler(pt, coeffs_small, prime_cutoff=800)
        devs = []
        for N, K in ((100, 50), (300, 150), (900, 450)):
            zt = Z_truncated(pt, coeffs_small, N=N, K=K, sieve=sieve_mid)
            assert abs(zt - ze) < z_truncation_estimate(pt, N, K)
            devs.append(abs(zt - ze))
        assert devs[0] > devs[1] > devs[2]

    def test_factored_form(self, coeffs_small, sieve_mid):
        pt = ZPoint(1.2, 1.1, 1.2, k1=5)
        ze = Z_euler(pt, coeffs_small, prime_cutoff=600)
        zf = z_factored(pt, coeffs_small, prime_cutoff=600,
                        n_terms=100_000)
        # both sides carry their own truncations (Euler cutoff, Dirichlet
        # tails, Y-product cutoff); agreement at the 1e-3 level is what the
        # chosen cutoffs support
        assert abs(ze - zf) < 1e-3 * max(1.0, abs(ze))

    def test_rejects_complex_shift_in_factored(self, coeffs_small):
        pt = ZPoint(1.2 + 0.3j, 1.1, 1.2)
        with pytest.raises(ValueError):
            z_factored(pt, coeffs_small)


class TestDiagonal:
    def test_series_converges_to_factored(self, coeffs_small, sym2_mid,
                                          sieve_mid):
        u = v = 0.5
        fact = diagonal_factored(u, v, coeffs_small, sym2_mid,
                                 prime_cutoff=10**5)
        devs = []
        for N in (3_000, 30_000, 100_000):
            ser = diagonal_series_G(2, u, v, N, coeffs_small, sieve_mid)
            devs.append(abs(ser - fact))
        # the coarse truncation is clearly worse; past that the deviation
        # sits at the floor set by the factored side's own cutoffs
        assert devs[0] > devs[2]
        assert devs[2] < 2e-4

    def test_variant_1_differs(self, coeffs_small, sieve_mid):
        a = diagonal_series_G(1, 0.5, 0.5, 2_000, coeffs_small, sieve_mid)
        b = diagonal_series_G(2, 0.5, 0.5, 2_000, coeffs_small, sieve_mid)
        assert abs(a - b) > 1e-6

    def test_validation(self, coeffs_small):
        with pytest.raises(ValueError):
            diagonal_series_G(3, 0.5, 0.5, 100, coeffs_small)
