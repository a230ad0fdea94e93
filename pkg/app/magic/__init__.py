from .ball import BallValue, Rigor
from .density import density_bound, density_exact, density_row
from .evaluate import (
    IntegrandSeries,
    derivative_f,
    eval_f,
    eval_magic,
    eval_magic_derivative,
    finite_difference_f,
    grid_points,
    integrand_series,
    normalizer,
    sample_grid,
    sample_row,
    support_digits,
)
from .exppoly import ExpPoly, ExpTerm, MagicValue, Pole, RationalKernel
from .oracle import OracleResidual, eigenfunction_oracle
from .special_values import (
    BAsymptotics,
    f_special_values,
    leading_asymptotics_B,
    provenance_table,
    rescaled_a_values,
    special_values,
    taylor2,
    taylor2_exact,
    taylor_higher,
)

__all__ = [
    "BallValue",
    "Rigor",
    "density_bound",
    "density_exact",
    "density_row",
    "IntegrandSeries",
    "derivative_f",
    "eval_f",
    "eval_magic",
    "eval_magic_derivative",
    "finite_difference_f",
    "grid_points",
    "integrand_series",
    "normalizer",
    "sample_grid",
    "sample_row",
    "support_digits",
    "ExpPoly",
    "ExpTerm",
    "MagicValue",
    "Pole",
    "RationalKernel",
    "OracleResidual",
    "eigenfunction_oracle",
    "BAsymptotics",
    "f_special_values",
    "leading_asymptotics_B",
    "provenance_table",
    "rescaled_a_values",
    "special_values",
    "taylor2",
    "taylor2_exact",
    "taylor_higher",
]
