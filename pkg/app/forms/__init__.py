from .basis import BasisSolution, quasimodular_basis_solve, solve_exact, theta_basis_solve
from .catalog import (
    FORM_FACTORS,
    FORM_NAMES,
    FormCatalog,
    build_catalog,
    catalog_hash,
    catalog_order,
    catalog_to_json,
    form_hashes,
    inject_fault,
    load_catalog,
    phi_family,
    psi_family,
    resolve_form_name,
)
from .eisenstein import EISENSTEIN_CONSTANTS, delta, delta_product, eisenstein
from .identities import IdentityReport, IdentityResult, verify_identities
from .numerators import NUMERATOR_RECIPES, cleared_numerators, evaluate_recipe, recipe
from .pi_series import PiSeries
from .theta import theta4

__all__ = [
    "BasisSolution",
    "quasimodular_basis_solve",
    "solve_exact",
    "theta_basis_solve",
    "FORM_FACTORS",
    "FORM_NAMES",
    "FormCatalog",
    "build_catalog",
    "catalog_hash",
    "catalog_order",
    "catalog_to_json",
    "form_hashes",
    "inject_fault",
    "load_catalog",
    "phi_family",
    "psi_family",
    "resolve_form_name",
    "EISENSTEIN_CONSTANTS",
    "delta",
    "delta_product",
    "eisenstein",
    "IdentityReport",
    "IdentityResult",
    "verify_identities",
    "NUMERATOR_RECIPES",
    "cleared_numerators",
    "evaluate_recipe",
    "recipe",
    "PiSeries",
    "theta4",
]
