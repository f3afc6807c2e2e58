import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtwist.arith import kronecker
from qtwist.charsum import (
    FLAVOR_ALL,
    FLAVOR_FUND,
    CharSumQuery,
    S_brute,
    check_inflation_pointwise,
    dual_sum_instance,
    poisson2_verify,
    poisson_verify,
    prop_key_shape_scan,
    shape_bound,
    write_scan_csv,
)


class TestQuery:
    def test_validation(self):
        with pytest.raises(ValueError):
            CharSumQuery(M=0.5, N=10.0)
        with pytest.raises(ValueError):
            CharSumQuery(M=10.0, N=10.0, flavor="bogus")

    def test_work_bound(self, coeffs_small, partition_G):
        with pytest.raises(ValueError):
            S_brute(CharSumQuery(M=1e5, N=1e4), coeffs_small, partition_G)


class TestPoisson:
    def test_simple_instances(self, test_F):
        for n, Z in ((15, 40.0), (21, 25.0), (9, 30.0), (25, 50.0),
                     (105, 60.0), (3, 12.0)):
            r = poisson_verify(n, Z, test_F, which="simple")
            assert r.deviation < 1e-8, (n, Z, r.deviation)

    def test_odd_d_variant(self, test_F):
        for n, Z in ((15, 40.0), (21, 25.0), (9, 30.0), (45, 33.0)):
            r = poisson_verify(n, Z, test_F, which="8d")
            assert r.deviation < 1e-8, (n, Z, r.deviation)

    def test_two_index_square_and_nonsquare(self, test_F):
        cases = [(3, 3, 60.0), (5, 5, 45.0), (3, 27, 50.0), (15, 15, 40.0),
                 (3, 5, 60.0), (7, 11, 45.0), (9, 5, 50.0), (21, 5, 35.0),
                 (1, 1, 30.0), (1, 15, 40.0)]
        squares = 0
        for n1, n2, X in cases:
            r = poisson2_verify(n1, n2, X, test_F)
            assert r.deviation < 1e-8, (n1, n2, X, r.deviation)
            if int(math.isqrt(n1 * n2)) ** 2 == n1 * n2:
                squares += 1
        assert squares >= 3  # the main-term branch is genuinely exercised

    def test_square_modulus_has_main_term(self, test_F):
        r = poisson2_verify(5, 5, 45.0, test_F)
        assert abs(r.lhs) > 1.0  # non-cancelling: trivial character mass

    def test_rejects_even_modulus(self, test_F):
        with pytest.raises(ValueError):
            poisson_verify(6, 20.0, test_F)
        with pytest.raises(ValueError):
            poisson2_verify(2, 3, 20.0, test_F)


class TestInflation:
    @given(
        st.integers(1, 120),
        st.sampled_from([3, 5, 7, 11, 13]),
        st.floats(20.0, 400.0),
        st.floats(-3.0, 3.0),
        st.booleans(),
    )
    @settings(max_examples=60, deadline=None)
    def test_inequalities_hold(self, coeffs_small, partition_G, m_raw, p, N,
                               t, neg):
        m = -m_raw if neg else m_raw
        if m % 2 == 0:
            m += 1
        r = check_inflation_pointwise(m, N, t, p, coeffs_small, partition_G)
        assert r.ok, (m, N, t, p, r)

    def test_rejects_even_p(self, coeffs_small, partition_G):
        with pytest.raises(ValueError):
            check_inflation_pointwise(5, 50.0, 0.0, 2, coeffs_small,
                                      partition_G)


class TestShapeScan:
    def test_grid_ratios_bounded(self, coeffs_small, partition_G, tmp_path):
        queries = [
            CharSumQuery(M=M, N=N, t=t, flavor=fl)
            for M in (30.0, 100.0, 300.0)
            for N in (50.0, 200.0, 800.0)
            for t in (0.0, 1.0)
            for fl in (FLAVOR_ALL, FLAVOR_FUND)
        ]
        rows = prop_key_shape_scan(queries, coeffs_small, partition_G)
        ratios = [r.ratio for r in rows]
        assert all(np.isfinite(ratios)) and all(r >= 0 for r in ratios)
        med = float(np.median([r for r in ratios if r > 0]))
        assert max(ratios) <= 3.0 * max(med, 1e-12) * 10  # loose sanity here
        path = str(tmp_path / "scan.csv")
        write_scan_csv(rows, path)
        assert len(open(path).read().strip().splitlines()) == len(rows) + 1

    def test_shape_bound_monotone_in_N_and_t(self):
        assert shape_bound(10, 100, 0) < shape_bound(10, 200, 0)
        assert shape_bound(10, 100, 0) < shape_bound(10, 100, 2)
        assert shape_bound(10, 100, 0) > 0.0


class TestDualSum:
    def test_scale_positive_and_finite(self, coeffs_small, partition_G):
        rng = random.Random(11)
        for _ in range(10):
            m = 2 * rng.randrange(1, 60) + 1
            N = rng.uniform(30.0, 500.0)
            val, scale = dual_sum_instance(m, N, 0.0, coeffs_small,
                                           partition_G)
            assert val >= 0.0 and scale > 0.0
            assert math.isfinite(val)

    def test_matches_S_brute_single_modulus(self, coeffs_small, partition_G):
        # |T(m)|^2 summed over the dyadic block equals S_brute
        q = CharSumQuery(M=7.0, N=60.0, flavor=FLAVOR_ALL)
        total = S_brute(q, coeffs_small, partition_G)
        acc = 0.0
        for m in list(range(7, 14)) + [-m for m in range(7, 14)]:
            v, _ = dual_sum_instance(m, 60.0, 0.0, coeffs_small, partition_G)
            acc += v * v
        assert abs(total - acc) < 1e-8 * max(1.0, total)
