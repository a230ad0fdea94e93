from .lemmas import (
    LEMMA_PLANS,
    STATUS_OK,
    BranchComponent,
    BranchPlan,
    BranchResult,
    CertResult,
    branch_tail,
    build_expression,
    certify_branch,
    certify_fhat_gap,
    certify_lemma,
    certify_window,
    fhat_gap_polynomial,
    lemma_plan,
    required_numerators,
)
from .ratpoly import RatPoly, poly_gcd
from .reduction import (
    Direction,
    ReducedBranch,
    Replacement,
    Sense,
    TPiPoly,
    TWindow,
    initial_window,
    pi_bounds,
    pi_power_bounds,
    reduce_branch,
)
from .sturm import bisection_root_count, count_real_roots, sign_variations, sturm_chain
from .windows import bounded_window, split_window, tail_window, u_enclosure

__all__ = [
    "LEMMA_PLANS",
    "STATUS_OK",
    "BranchComponent",
    "BranchPlan",
    "BranchResult",
    "CertResult",
    "branch_tail",
    "build_expression",
    "certify_branch",
    "certify_fhat_gap",
    "certify_lemma",
    "certify_window",
    "fhat_gap_polynomial",
    "lemma_plan",
    "required_numerators",
    "RatPoly",
    "poly_gcd",
    "Direction",
    "ReducedBranch",
    "Replacement",
    "Sense",
    "TPiPoly",
    "TWindow",
    "initial_window",
    "pi_bounds",
    "pi_power_bounds",
    "reduce_branch",
    "bisection_root_count",
    "count_real_roots",
    "sign_variations",
    "sturm_chain",
    "bounded_window",
    "split_window",
    "tail_window",
    "u_enclosure",
]
