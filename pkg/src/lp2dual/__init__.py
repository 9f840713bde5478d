"""Weighted-grid realizations of two-argument norms and functional norms.

The package discretizes functions on [0, 1] with positive-weight quadrature
rules and provides, on top of that grid: weighted p-norms with duality
helpers, two constructions of a norm on pairs of functions (an exact
double-sum form and a supremum over dual certificates), a semi-inner product
with projections and volumes, operator-style norms of bilinear kernels, and
seeded verification suites that check the relations between all of these
with explicit margins.
"""

from ._version import __version__
from .errors import (
    DegenerateInputError,
    ExponentError,
    GridMismatchError,
    InvalidSizeError,
    KernelSymmetryError,
    Lp2DualError,
    SingularGramError,
    SpecParseError,
)
from .g_geometry import g, g_orthogonalize, g_projection, gram_det, volume
from .grid import (
    GridFunction,
    Kernel,
    QuadratureRule,
    function_to_csv,
    integrate,
    kernel_to_csv,
    make_rule,
    sample_function,
    sample_kernel,
    stable_seed,
)
from .lp_core import (
    HolderExtremal,
    abs_pow,
    conjugate_exponent,
    holder_extremal,
    lp_norm,
    pairing,
    require_nonzero,
)
from .two_functional import (
    RatioSearchOptions,
    antisym_part,
    apply_kernel,
    eval_f,
    fnorm_21,
    fnorm_22_G,
    fnorm_22_H,
    is_antisymmetric,
    kernel_from_bilinear,
    yq_norm,
)
from .two_norm import (
    AscentOptions,
    NormEstimate,
    gahler_norm,
    gunawan_norm,
    pairing_determinant,
)
from .verify import (
    SUITE_IDS,
    Report,
    SuiteConfig,
    TrialRecord,
    generate_kernel,
    generate_pair,
    reports_equivalent,
    run_suite,
)

__all__ = [
    "__version__",
    "Lp2DualError",
    "GridMismatchError",
    "InvalidSizeError",
    "SpecParseError",
    "ExponentError",
    "DegenerateInputError",
    "SingularGramError",
    "KernelSymmetryError",
    "QuadratureRule",
    "GridFunction",
    "Kernel",
    "make_rule",
    "integrate",
    "sample_function",
    "sample_kernel",
    "function_to_csv",
    "kernel_to_csv",
    "stable_seed",
    "lp_norm",
    "pairing",
    "require_nonzero",
    "conjugate_exponent",
    "holder_extremal",
    "HolderExtremal",
    "abs_pow",
    "AscentOptions",
    "NormEstimate",
    "gunawan_norm",
    "gahler_norm",
    "pairing_determinant",
    "g",
    "gram_det",
    "g_projection",
    "g_orthogonalize",
    "volume",
    "apply_kernel",
    "eval_f",
    "antisym_part",
    "is_antisymmetric",
    "kernel_from_bilinear",
    "yq_norm",
    "fnorm_21",
    "fnorm_22_G",
    "fnorm_22_H",
    "RatioSearchOptions",
    "SUITE_IDS",
    "SuiteConfig",
    "TrialRecord",
    "Report",
    "run_suite",
    "generate_pair",
    "generate_kernel",
    "reports_equivalent",
]
