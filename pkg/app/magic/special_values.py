"""
Exact values of a, b, f, f̂ at the kernel poles r² ∈ {0, 2, 4}.

Near a pole m write x = r² - m. Then 4·sin²(πr²/2) = π²x² + O(x⁴), so with
the kernel's Laurent part A₂/x² + A₁/x the value at r = √m is ±π²·A₂ and
the r-derivative is ±2√m·π²·A₁; the analytic remainder only enters at
higher order. At m = 0 the r² Taylor coefficient is ±π²·A₁.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Optional, Tuple

import mpmath

from app.magic.ball import BallValue, Rigor
from app.magic.evaluate import A_NORMALIZER, B_NORMALIZER, eval_magic, integrand_series, normalizer
from app.magic.exppoly import ExpPoly, MagicValue, RationalKernel
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

# the leading exponential polynomials only need coefficients through q⁰
_LEADING_ORDER = 1

I = MagicValue(Fraction(1), i_power=1)
PI_SQUARED = MagicValue(Fraction(1), pi_power=2)

# f = F_A·v_a + F_B·v_b, f̂ = F_A·v_a - F_B·v_b
F_A = MagicValue(A_NORMALIZER, pi_power=1)
F_B = MagicValue(B_NORMALIZER, pi_power=-1)

# B(t) = (π/28304640)·t¹⁰φ(i/t) + ψ_I(it)/(65520π)
B_T_SCALES = ((Fraction(1, 28304640), 1), (Fraction(1, 65520), -1))


def _sqrt_magic(m: Fraction) -> MagicValue:
    """√m for m a square or twice a square."""
    if m.denominator != 1 or m < 0:
        raise ValueError(f"no exact square root for {m}")
    n = int(m)
    root = isqrt(n)
    if root * root == n:
        return MagicValue(Fraction(root))
    root = isqrt(n // 2)
    if n % 2 == 0 and 2 * root * root == n:
        return MagicValue(Fraction(root), sqrt2=1)
    raise ValueError(f"no exact square root for {m}")


def _laurent_value(kernel: RationalKernel, m: int, order: int) -> MagicValue:
    total = MagicValue.zero()
    for pi_power, coefficient in kernel.laurent(m, order).items():
        total = total + MagicValue(coefficient, pi_power=pi_power)
    return total


@lru_cache(maxsize=4)
def leading_kernel(which: str) -> RationalKernel:
    return integrand_series(which, _LEADING_ORDER).leading.kernel()


def _sign(which: str) -> int:
    return integrand_series(which, _LEADING_ORDER).sign


def value_at_pole(which: str, m: int) -> MagicValue:
    """v(√m) where a = i·v or b = i·v."""
    return PI_SQUARED * _laurent_value(leading_kernel(which), m, 2) * _sign(which)


def slope_at_pole(which: str, m: int) -> MagicValue:
    """dv/dr at r = √m."""
    return PI_SQUARED * _laurent_value(leading_kernel(which), m, 1) * _sqrt_magic(Fraction(m)) * (2 * _sign(which))


def quadratic_coefficient(which: str) -> MagicValue:
    """Coefficient of r² in v at r = 0."""
    return PI_SQUARED * _laurent_value(leading_kernel(which), 0, 1) * _sign(which)


def special_values() -> Dict[str, MagicValue]:
    """Exact values of a, b and their derivatives at 0, √2 and 2."""
    table: Dict[str, MagicValue] = {}
    for which in ("a", "b"):
        for m, label in ((0, "0"), (2, "√2"), (4, "2")):
            table[f"{which}({label})"] = I * value_at_pole(which, m)
        for m, label in ((2, "√2"), (4, "2")):
            table[f"{which}'({label})"] = I * slope_at_pole(which, m)
    order = ("a(0)", "a(√2)", "a'(√2)", "a(2)", "a'(2)", "b(0)", "b(√2)", "b(2)", "b'(√2)", "b'(2)")
    return {key: table[key] for key in order}


def rescaled_a_values() -> Dict[str, MagicValue]:
    """a rescaled so that a(0) = 1."""
    a0 = value_at_pole("a", 0)
    return {
        "a(√2)/a(0)": value_at_pole("a", 2) / a0,
        "a'(√2)/a(0)": slope_at_pole("a", 2) / a0,
        "a'(2)/a(0)": slope_at_pole("a", 4) / a0,
        "r² coefficient": quadratic_coefficient("a") / a0,
    }


def _combine(which: str, va: MagicValue, vb: MagicValue) -> MagicValue:
    if which == "f":
        return F_A * va + F_B * vb
    if which == "fhat":
        return F_A * va - F_B * vb
    raise ValueError(f"unknown function '{which}'; expected 'f' or 'fhat'")


def taylor2_exact(which: str) -> MagicValue:
    return _combine(which, quadratic_coefficient("a"), quadratic_coefficient("b"))


def taylor2(which: str, digits: Optional[int] = None) -> BallValue:
    """r² Taylor coefficient of f or f̂ at 0 as a ball."""
    digits = settings.EVAL_DIGITS if digits is None else digits
    with mpmath.workdps(digits + settings.GUARD_DIGITS):
        value = taylor2_exact(which).real_coefficient()
        return BallValue(value, mpmath.mpf(10) ** (-digits - settings.GUARD_DIGITS + 2), Rigor.CERTIFIED)


def f_special_values() -> Dict[str, MagicValue]:
    table: Dict[str, MagicValue] = {}
    for which in ("f", "fhat"):
        for m, label in ((0, "0"), (2, "√2"), (4, "2")):
            table[f"{which}({label})"] = _combine(which, value_at_pole("a", m), value_at_pole("b", m))
        for m, label in ((2, "√2"), (4, "2")):
            table[f"{which}'({label})"] = _combine(which, slope_at_pole("a", m), slope_at_pole("b", m))
        table[f"{which} r² coefficient"] = taylor2_exact(which)
    return table


@dataclass(frozen=True)
class BAsymptotics:
    exppoly: ExpPoly
    t_e2: MagicValue
    e2: MagicValue
    e4_cancelled: bool

    def to_json(self):
        return {
            "t_e2": self.t_e2.to_json(),
            "e2": self.e2.to_json(),
            "e4_cancelled": self.e4_cancelled,
            "growing_part": self.exppoly.render(ascii_only=True),
        }


def _as_magic(coefficients: Dict[int, Fraction]) -> MagicValue:
    total = MagicValue.zero()
    for pi_power, c in coefficients.items():
        total = total + MagicValue(c, pi_power=pi_power)
    return total


def leading_asymptotics_B() -> BAsymptotics:
    """
    Growing part of B(t); the e^{4πt} terms of the two halves cancel, which
    is what lets the f̂ integral converge down to r > √2.
    """
    (ca, pa), (cb, pb) = B_T_SCALES
    growth = (
        integrand_series("a", _LEADING_ORDER).leading.scale(ca, pa)
        + integrand_series("b", _LEADING_ORDER).leading.scale(cb, pb)
    )
    e4 = [t for t in growth.terms if t.rate == 4]
    return BAsymptotics(
        exppoly=growth,
        t_e2=_as_magic(growth.coefficient(1, 2)),
        e2=_as_magic(growth.coefficient(0, 2)),
        e4_cancelled=not e4,
    )


def taylor_higher(which: str = "a", terms: int = 4, digits: Optional[int] = None) -> List[BallValue]:
    """
    Taylor coefficients c_n of the normalized function in powers of r²
    (n = 0..terms), from one-sided numerical differentiation in x = r².
    No rationality is claimed for n ≥ 2.
    """
    digits = settings.EVAL_DIGITS if digits is None else digits

    def g(x):
        return eval_magic(which, mpmath.sqrt(x), digits + settings.GUARD_DIGITS // 2).midpoint * normalizer(which)

    out: List[BallValue] = []
    with mpmath.workdps(digits):
        for n in range(terms + 1):
            if n == 0:
                out.append(BallValue(g(mpmath.mpf(0)), mpmath.mpf(10) ** (-digits), Rigor.HEURISTIC))
                continue
            h = mpmath.mpf(10) ** (-(digits // (n + 2)))
            fine = mpmath.diff(g, 0, n, direction=1, h=h) / mpmath.factorial(n)
            coarse = mpmath.diff(g, 0, n, direction=1, h=2 * h) / mpmath.factorial(n)
            out.append(BallValue(fine, 10 * abs(fine - coarse), Rigor.HEURISTIC))
    logger.info("Taylor coefficients", extra={"extra": {"which": which, "terms": terms, "digits": digits}})
    return out


def provenance_table(digits: Optional[int] = None) -> List[Tuple[str, str, str, str]]:
    """(name, exact text, decimal value, provenance) rows for the values command."""
    digits = settings.EVAL_DIGITS if digits is None else digits
    rows = []
    with mpmath.workdps(digits + settings.GUARD_DIGITS):
        for table in (special_values(), f_special_values(), rescaled_a_values()):
            for name, value in table.items():
                rows.append((name, value.render(), mpmath.nstr(value.real_coefficient(), digits), "exact-symbolic"))
    return rows
