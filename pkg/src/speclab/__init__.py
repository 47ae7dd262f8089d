"""Exact spectral multiplicities of powers of discrete-spectrum models.

Finite rotations, truncated infinite products and permutation models, with
an eigenvalue oracle, closed-form multiplicity formulas, weak-limit
certificates and joining / Markov operator checks.
"""
__version__ = "0.1.0"

from speclab._kernels import BACKEND
from speclab.arithmetic import (
    AdmissiblePolynomial,
    AlignmentSolution,
    ArithmeticProgression,
    Factorization,
    PrimeSpec,
    admissible_check,
    factor_against,
    refine_progression,
    solve_alignment,
)
from speclab.gp import GpNormalForm, gp_reduce
from speclab.joining import (
    JoiningMatrix,
    MarkovDecomposition,
    RationalMatrix,
    graph_disjointness,
    markov_decompose,
    multivalued_graph_check,
    off_diagonal_joining,
)
from speclab.models import (
    FiniteAbelianGroup,
    GroupRotation,
    Model2System,
    MultiplierAutomorphism,
    ProductModel,
    build_model2,
    multiplier_for,
    power,
    sigma_family,
    truncate,
)
from speclab.spectral import (
    MultiplicityProfile,
    closed_form_profile,
    hm_prime_powers,
    mm_theorem4,
    multiplicity_set_theorem5,
    oracle_profile,
    ratio_scan,
)
from speclab.weaklimits import WLCertificate, check_rigidity, check_wl, wl_progressions

__all__ = [
    "__version__",
    "admissible_check",
    "AdmissiblePolynomial",
    "AlignmentSolution",
    "ArithmeticProgression",
    "BACKEND",
    "build_model2",
    "check_rigidity",
    "check_wl",
    "closed_form_profile",
    "factor_against",
    "Factorization",
    "FiniteAbelianGroup",
    "gp_reduce",
    "GpNormalForm",
    "graph_disjointness",
    "GroupRotation",
    "hm_prime_powers",
    "JoiningMatrix",
    "markov_decompose",
    "MarkovDecomposition",
    "mm_theorem4",
    "Model2System",
    "multiplicity_set_theorem5",
    "MultiplicityProfile",
    "multiplier_for",
    "MultiplierAutomorphism",
    "multivalued_graph_check",
    "off_diagonal_joining",
    "oracle_profile",
    "power",
    "PrimeSpec",
    "ProductModel",
    "ratio_scan",
    "RationalMatrix",
    "refine_progression",
    "sigma_family",
    "solve_alignment",
    "truncate",
    "wl_progressions",
    "WLCertificate",
]
