import os

import pytest

os.environ.setdefault("QTWIST_CACHE", os.path.expanduser("~/.cache/qtwist"))
# allow the determinism checks to request 8 threads even on small machines
os.environ.setdefault("NUMBA_NUM_THREADS", "8")

import numba

numba.set_num_threads(1)

from qtwist import kernels
from qtwist.arith import default_sieve
from qtwist.modform import build_delta_coefficients, sym2_coefficients


@pytest.fixture(scope="session")
def coeffs_small():
    """tau/lambda table to 1.2e5 (fast to build, enough for most tests)."""
    return build_delta_coefficients(120_000)


@pytest.fixture(scope="session")
def coeffs_mid():
    """tau/lambda table to 3e5 (functional equation dual sums, constants)."""
    return build_delta_coefficients(300_000)


@pytest.fixture(scope="session")
def sym2_mid(coeffs_mid):
    return sym2_coefficients(coeffs_mid, coeffs_mid.n_max)


@pytest.fixture(scope="session")
def sieve_mid():
    return default_sieve(4_000_000)


@pytest.fixture(scope="session")
def partition_G():
    return kernels.build_partition_G()


@pytest.fixture(scope="session")
def test_F():
    return kernels.build_test_F()


@pytest.fixture(scope="session")
def grave_kernel(partition_G):
    return kernels.GraveKernel(partition_G, 12)
