"""
The linear programming density bound π^{n/2}/(n/2)!·(r0/2)^n for n = 24.
"""
from fractions import Fraction
from math import factorial
from typing import Optional, Union

import mpmath
from mpmath import iv
from mpmath.libmp import to_rational

from app.magic.ball import BallValue, Rigor
from app.magic.exppoly import MagicValue
from app.settings import settings

DIMENSION = 24
HALF_DIMENSION = DIMENSION // 2


def _check_radius(r0) -> None:
    if r0 <= 0:
        raise ValueError(f"r0 must be positive, got {r0}")


def density_bound(r0: Union[int, float, str] = 2, digits: Optional[int] = None) -> BallValue:
    """
    π¹²/12!·(r0/2)²⁴ from interval arithmetic; the ball encloses the value
    whenever r0 is exactly representable.
    """
    digits = settings.EVAL_DIGITS if digits is None else digits
    dps = digits + settings.GUARD_DIGITS
    saved = iv.dps
    iv.dps = dps
    try:
        x = iv.mpf(r0)
        _check_radius(x.a)
        value = iv.pi ** HALF_DIMENSION / factorial(HALF_DIMENSION) * (x / 2) ** DIMENSION
        lo_raw, hi_raw = value._mpi_
    finally:
        iv.dps = saved
    lo = Fraction(*to_rational(lo_raw))
    hi = Fraction(*to_rational(hi_raw))
    with mpmath.workdps(dps + 10):
        mid = (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2
        width = hi - lo
        radius = mpmath.mpf(width.numerator) / width.denominator / 2 + abs(mid) * mpmath.mpf(2) ** (-mpmath.mp.prec + 4)
    return BallValue(mid, radius, Rigor.CERTIFIED)


def density_exact(r0: Union[int, Fraction] = 2) -> MagicValue:
    """π¹²/12!·(r0/2)²⁴ for rational r0."""
    r0 = Fraction(r0)
    _check_radius(r0)
    return MagicValue((r0 / 2) ** DIMENSION / factorial(HALF_DIMENSION), pi_power=HALF_DIMENSION)


def density_row(digits: int = 8) -> str:
    """The Leech lattice row of the values table."""
    return f"π¹²/12! = {mpmath.nstr(density_bound(2).midpoint, digits)}…"
