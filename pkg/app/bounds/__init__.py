from .power_bound import (
    BASE_BOUNDS,
    EmpiricalCheck,
    Grid,
    PowerBound,
    base_bound,
    bound_for_monomials,
    bound_product,
    bound_regrid,
    bound_scale,
    bound_shift,
    bound_sum,
    check_empirical,
    numerator_bound,
    numerator_bounds,
)
from .tails import TailBound, flagship_tail, tail_bound

__all__ = [
    "BASE_BOUNDS",
    "EmpiricalCheck",
    "Grid",
    "PowerBound",
    "base_bound",
    "bound_for_monomials",
    "bound_product",
    "bound_regrid",
    "bound_scale",
    "bound_shift",
    "bound_sum",
    "check_empirical",
    "numerator_bound",
    "numerator_bounds",
    "TailBound",
    "flagship_tail",
    "tail_bound",
]
