"""Weighted generalized inverses of rectangular matrices.

Compute certified W-weighted Drazin, core-EP, DMP/MPD and weak inverse
families, block decompositions, perturbation updates, and reverse/forward
order laws, with residual reports for every claimed identity.
"""

from ._gen import (
    commuting_products,
    ex1_member,
    ex1_pair,
    ex1_weak_mpd,
    ex2_matrices,
    ex2_member,
    random_pair,
    random_square_with_index,
    rol_matrices,
)
from .decomp import (
    BlockDecomposition,
    canonical_report,
    decomposition_report,
    mp_via_blocks,
    weak_mpd_canonical,
    weighted_core_ep_decompose,
)
from .matcore import (
    DEFAULT_TOL,
    CertificationError,
    DimensionError,
    GenerationError,
    HypothesisError,
    ToleranceConfig,
    VerificationReport,
    WeightedPair,
    as_matrix,
    index_of,
    mp_inverse,
    oblique_projector_check,
    projector_onto,
    range_inclusion,
    rank_of,
    spectral_norm,
    weighted_pair,
)
from .orderlaw import (
    GeneralSolutionFamily,
    OrderLawCase,
    commuting_case,
    ex2_case,
    forward_order_minimal,
    forward_order_weak,
    matrix_equation_solution,
    reverse_order_minimal,
    reverse_order_weak,
    reverse_order_weak_mpd,
    rol_case,
    triple_forward,
    triple_reverse,
    wdrazin_order_corollaries,
)
from .perturb import (
    PerturbationScenario,
    admissible_perturbation,
    dmp_perturbation,
    drazin_case_perturbation,
    mpd_perturbation,
    perturbed_mrwwd,
    perturbed_mrwwd_right,
    scenario_from_parts,
)
from .sqinv import SquareInverseResult, core_ep, drazin, m_wgi
from .verify import (
    check_dmp_characterizations,
    check_mp_drazin_absorption,
    check_mpd_characterizations,
    check_mrwwd,
    check_mrwwd_right,
    check_projectors,
    check_projectors_right,
    check_unique_projector_solution,
    check_wdrazin_specialization,
    check_weak_dmp_system,
    check_weak_mpd_system,
    mpd_general_solution,
    one_inverse_family,
    one_inverse_family_right,
)
from .winv import (
    CATALOG,
    PARAMETRIZED_KINDS,
    SolutionFamily,
    WeightedInverseResult,
    compute_kind,
    mrwwd_family,
    mrwwd_right_family,
    w_cepmp,
    w_core_ep,
    w_dmp,
    w_drazin,
    w_m_weak_core,
    w_m_wgi,
    w_m_wgmp,
    w_mpcep,
    w_mpd,
    weak_dmp,
    weak_mpd,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "CATALOG",
    "CertificationError",
    "DEFAULT_TOL",
    "DimensionError",
    "GeneralSolutionFamily",
    "GenerationError",
    "HypothesisError",
    "OrderLawCase",
    "PARAMETRIZED_KINDS",
    "PerturbationScenario",
    "SolutionFamily",
    "SquareInverseResult",
    "ToleranceConfig",
    "VerificationReport",
    "WeightedInverseResult",
    "WeightedPair",
    "admissible_perturbation",
    "as_matrix",
    "canonical_report",
    "check_dmp_characterizations",
    "check_mp_drazin_absorption",
    "check_mpd_characterizations",
    "check_mrwwd",
    "check_mrwwd_right",
    "check_projectors",
    "check_projectors_right",
    "check_unique_projector_solution",
    "check_wdrazin_specialization",
    "check_weak_dmp_system",
    "check_weak_mpd_system",
    "commuting_case",
    "commuting_products",
    "compute_kind",
    "core_ep",
    "decomposition_report",
    "dmp_perturbation",
    "drazin",
    "drazin_case_perturbation",
    "ex1_member",
    "ex1_pair",
    "ex1_weak_mpd",
    "ex2_case",
    "ex2_matrices",
    "ex2_member",
    "forward_order_minimal",
    "forward_order_weak",
    "index_of",
    "m_wgi",
    "matrix_equation_solution",
    "mp_inverse",
    "mp_via_blocks",
    "mpd_general_solution",
    "mpd_perturbation",
    "mrwwd_family",
    "mrwwd_right_family",
    "oblique_projector_check",
    "one_inverse_family",
    "one_inverse_family_right",
    "perturbed_mrwwd",
    "perturbed_mrwwd_right",
    "projector_onto",
    "random_pair",
    "random_square_with_index",
    "range_inclusion",
    "rank_of",
    "reverse_order_minimal",
    "reverse_order_weak",
    "reverse_order_weak_mpd",
    "rol_case",
    "rol_matrices",
    "scenario_from_parts",
    "spectral_norm",
    "triple_forward",
    "triple_reverse",
    "w_cepmp",
    "w_core_ep",
    "w_dmp",
    "w_drazin",
    "w_m_weak_core",
    "w_m_wgi",
    "w_m_wgmp",
    "w_mpcep",
    "w_mpd",
    "wdrazin_order_corollaries",
    "weak_dmp",
    "weak_mpd",
    "weak_mpd_canonical",
    "weighted_core_ep_decompose",
    "weighted_pair",
]
