import json
import math

import numpy as np
import pytest

from qtwist.moments import (
    ABScanRecord,
    MomentReport,
    RunConfig,
    ab_moment_scan,
    build_constants,
    default_window,
    moment_raw,
    moment_smoothed,
    predicted_main_term,
    report_to_csv,
    report_to_json,
)


@pytest.fixture(scope="module")
def constants(coeffs_mid, sym2_mid):
    return build_constants(coeffs_mid, sym2_mid, RunConfig())


class TestConfig:
    def test_caln_policy(self):
        c = RunConfig()
        X = 1e5
        assert abs(c.caln_for(X) - X / math.log(X) ** 3) < 1e-9
        assert RunConfig(caln_policy="fixed:250").caln_for(X) == 250.0

    def test_hash_sensitivity(self):
        a = RunConfig().config_hash()
        b = RunConfig(tol=1e-5).config_hash()
        assert a != b and len(a) == 16


class TestRaw:
    def test_small_family_positive(self, coeffs_small):
        r = moment_raw(500.0, 2, coeffs_small)
        assert r.d_count > 0 and r.raw_sum > 0.0

    def test_first_moment_matches_direct(self, coeffs_small):
        from qtwist.arith import enumerate_twist_moduli
        from qtwist.lfun import l_half_twist

        r = moment_raw(300.0, 1, coeffs_small, RunConfig(tol=1e-8))
        direct = math.fsum(
            l_half_twist(d, coeffs_small, tol=1e-8).value
            for d in enumerate_twist_moduli(300.0)
        )
        assert abs(r.raw_sum - direct) < 1e-8 * max(1.0, abs(direct))

    def test_ceiling(self, coeffs_small):
        with pytest.raises(ValueError):
            moment_raw(2e6, 2, coeffs_small)


class TestSmoothed:
    def test_ratio_order_of_magnitude(self, coeffs_mid, constants):
        J = default_window()
        r = moment_smoothed(3000.0, J, coeffs_mid, constants)
        assert r.d_count > 0
        assert 0.2 < r.ratio < 5.0  # small-X: only order of magnitude

    def test_window_restricts_family(self, coeffs_mid, constants):
        J = default_window()
        r = moment_smoothed(2000.0, J, coeffs_mid, constants)
        # d must satisfy J(8d/X) > 0, i.e. roughly X/16 < d < X/4
        assert r.d_count < 2000.0 / 4

    def test_predicted_main_term_formula(self, constants):
        J = default_window()
        X = 1e4
        expect = constants.C_f * J.mellin_at_1() * X * math.log(X)
        assert predicted_main_term(X, J, constants) == expect


class TestABSplit:
    def test_identity_and_cauchy_schwarz(self, coeffs_mid):
        J = default_window()
        X = 2000.0
        rec = ab_moment_scan(X, 120.0, coeffs_mid, J)
        assert rec.cross_term_ok
        lhs = rec.sum_AA + 2.0 * rec.sum_AB + rec.sum_BB
        assert abs(lhs - rec.smoothed_sum) < 1e-9 * max(1.0, rec.smoothed_sum)

    def test_B_vanishes_when_caln_covers_conductor(self, coeffs_mid):
        J = default_window()
        X = 2000.0
        rec = ab_moment_scan(X, 8.0 * X, coeffs_mid, J)
        assert rec.sum_BB == 0.0 and rec.sum_AB == 0.0


class TestDeterminism:
    def test_reports_byte_identical_across_thread_counts(self, coeffs_small):
        import numba

        outs = []
        for threads in (1, 8):
            numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
            r = moment_raw(600.0, 2, coeffs_small, RunConfig(tol=1e-6))
            outs.append(report_to_json([r]))
        assert outs[0] == outs[1]

    def test_json_roundtrip_exact_floats(self, coeffs_small):
        r = moment_raw(400.0, 2, coeffs_small)
        text = report_to_json([r])
        row = json.loads(text)[0]
        assert float(eval(row["raw_sum"])) == r.raw_sum  # repr roundtrip
        assert row["quantity"] == "twist-central-value-moment"

    def test_csv_headers_sorted(self, coeffs_small):
        r = moment_raw(400.0, 2, coeffs_small)
        text = report_to_csv([r])
        header = text.splitlines()[0].split(",")
        assert header == sorted(header)
