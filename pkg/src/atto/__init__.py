"""Finite-dimensional model spaces and asymmetric truncated Toeplitz operators.

The package realizes K2_theta for finite Blaschke products theta as concrete
inner-product spaces on a circle grid and implements, as testable numerical
procedures, the construction A_phi: K2_theta -> K2_alpha, the zero-symbol
criterion, kernel descriptions for inner symbols, both rank-two membership
characterizations with their rank-one degenerations, and two independent
routes recovering a symbol from the operator.
"""

from .errors import (
    AttoError,
    ConstantInner,
    DimensionMismatch,
    GridMismatch,
    NotDivisible,
    NotInClass,
    NyquistViolation,
    OutsideDisk,
    QuotientConstant,
    SingularSystem,
)
from .inner import InnerFunction, blaschke_factor, divides, evaluate, gcd, monomial, quotient
from .grid import GridFunction, inner_product, norm, project_minus, project_plus
from .model import Decomposition, KernelVectors, ModelSpace, decompose, kernels
from .operators import (
    AttoMatrix,
    SymbolPair,
    adjoint,
    build_atto,
    build_atto_from_pair,
    is_zero_symbol,
    kernel_action_suite,
    kernel_conjugate_inner_symbol,
    kernel_inner_symbol,
    normalize_symbol,
)
from .characterize import (
    CharData,
    defect_one,
    defect_two,
    lemma_l4_suite,
    membership_extract,
    mu_nu_extract,
    mu_nu_from_symbol,
    rank_one_conditions,
    series_partial_sum,
)
from .recover import (
    RecoveryScalars,
    canonicalize_mu_nu,
    gauge_fit,
    recover_scalars,
    recover_symbol_from_actions,
    recover_symbol_from_mu_nu,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "AttoError", "ConstantInner", "DimensionMismatch", "GridMismatch",
    "NotDivisible", "NotInClass", "NyquistViolation", "OutsideDisk",
    "QuotientConstant", "SingularSystem",
    "InnerFunction", "blaschke_factor", "divides", "evaluate", "gcd",
    "monomial", "quotient",
    "GridFunction", "inner_product", "norm", "project_minus", "project_plus",
    "Decomposition", "KernelVectors", "ModelSpace", "decompose", "kernels",
    "AttoMatrix", "SymbolPair", "adjoint", "build_atto", "build_atto_from_pair",
    "is_zero_symbol", "kernel_action_suite", "kernel_conjugate_inner_symbol",
    "kernel_inner_symbol", "normalize_symbol",
    "CharData", "defect_one", "defect_two", "lemma_l4_suite",
    "membership_extract", "mu_nu_extract", "mu_nu_from_symbol",
    "rank_one_conditions", "series_partial_sum",
    "RecoveryScalars", "canonicalize_mu_nu", "gauge_fit", "recover_scalars",
    "recover_symbol_from_actions", "recover_symbol_from_mu_nu",
    "run_suite",
]
