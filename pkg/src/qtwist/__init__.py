"""Second-moment computations for quadratic twists of a weight-12 level-1
eigenform: exact coefficient tables, Gauss-type sums, smoothed kernels,
central L-values, multiple Dirichlet series, character-sum oracles, and
moment reports."""

from .arith import (
    Factorization,
    FundamentalDiscriminant,
    Sieve,
    default_sieve,
    enumerate_fundamental_discriminants,
    enumerate_twist_moduli,
    is_fundamental_discriminant,
    kronecker,
)
from .gauss import GaussSumExact, gauss_brute, gauss_closed, gauss_value
from .kernels import (
    GraveKernel,
    MomentWindowJ,
    PartitionG,
    TestFunctionF,
    build_J,
    build_partition_G,
    build_test_F,
    smoothstep,
    w_half,
    w_half_contour,
)
from .lfun import (
    EulerConstants,
    TwistLValue,
    constant_Cf,
    l_half_twist,
    l_half_twist_batch,
    verify_functional_equation,
)
from .modform import (
    EigenformCoefficients,
    Sym2Coefficients,
    build_delta_coefficients,
    sym2_coefficients,
    tau_coefficients,
)
from .moments import (
    ABScanRecord,
    MomentReport,
    RunConfig,
    ab_moment_scan,
    moment_raw,
    moment_smoothed,
)

__version__ = "0.1.0"

__all__ = [
    "ABScanRecord",
    "EigenformCoefficients",
    "EulerConstants",
    "Factorization",
    "FundamentalDiscriminant",
    "GaussSumExact",
    "GraveKernel",
    "MomentReport",
    "MomentWindowJ",
    "PartitionG",
    "RunConfig",
    "Sieve",
    "Sym2Coefficients",
    "TestFunctionF",
    "TwistLValue",
    "ab_moment_scan",
    "build_J",
    "build_delta_coefficients",
    "build_partition_G",
    "build_test_F",
    "constant_Cf",
    "default_sieve",
    "enumerate_fundamental_discriminants",
    "enumerate_twist_moduli",
    "gauss_brute",
    "gauss_closed",
    "gauss_value",
    "is_fundamental_discriminant",
    "kronecker",
    "l_half_twist",
    "l_half_twist_batch",
    "moment_raw",
    "moment_smoothed",
    "smoothstep",
    "sym2_coefficients",
    "tau_coefficients",
    "verify_functional_equation",
    "w_half",
    "w_half_contour",
]
