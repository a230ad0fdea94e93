"""
Numerical evaluation of the eigenfunctions a, b and of f, f̂.

With a(r) = i·v_a(r) and b(r) = i·v_b(r),

    v_a(r) =  4·sin²(πr²/2)·∫₀^∞ t¹⁰φ(i/t)·e^{-πr²t} dt
    v_b(r) = -4·sin²(πr²/2)·∫₀^∞ ψ_I(it)·e^{-πr²t} dt

continued analytically to every r ≥ 0. The integral is split at t = 1.
On [1, ∞) the integrand is an exponential polynomial read off the
q-expansions and each term is integrated in closed form,

    ∫₁^∞ t^j·e^{-αt} dt = j!·e^{-α}·Σ_{i≤j} α^i/i! / α^{j+1},

which is also the continuation for the growing terms and carries the
poles at r² ∈ {0, 2, 4} that the double zeros of sin² cancel. On (0, 1]
the integrand is t¹⁰φ(i/t), resp. -t¹⁰ψ_S(i/t), a rapidly convergent
series in e^{-π/t}, integrated with mpmath.quad.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Dict, List, Optional, Tuple, Union

import mpmath

from app.errors import PrecisionError
from app.forms.catalog import load_catalog
from app.magic.ball import BallValue, Rigor
from app.magic.exppoly import ExpPoly, ExpTerm
from app.series import FormalSeries, HalfExp
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

Real = Union[int, float, str, mpmath.mpf]

A_NORMALIZER = Fraction(1, 113218560)  # times π
B_NORMALIZER = Fraction(1, 262080)  # times 1/π

# (catalog entry, π power, t degree, scalar) of the t ≥ 1 integrand
_LARGE_T = {
    "a": (("phi", 0, 2, 1), ("Phi1", -1, 1, 1), ("Phi2", -2, 0, -1)),
    "b": (("psiI", 0, 0, 1),),
}
# (catalog entry, scalar) of the series multiplying t¹⁰ on t ≤ 1
_SMALL_T = {"a": ("phi", 1), "b": ("psiS", -1)}
_OUTER_SIGN = {"a": 1, "b": -1}
TAIL_SAFETY = 10


def _check_which(which: str) -> str:
    if which not in _OUTER_SIGN:
        raise ValueError(f"unknown eigenfunction '{which}'; expected 'a' or 'b'")
    return which


def _check_r(r: mpmath.mpf) -> mpmath.mpf:
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return r


@dataclass(frozen=True)
class IntegrandSeries:
    """
    The t ≥ 1 integrand as leading + remainder exponential polynomials and
    the t ≤ 1 series (twice exponent, coefficient) multiplying t¹⁰.
    """

    which: str
    sign: int
    leading: ExpPoly
    remainder: ExpPoly
    small_t: Tuple[Tuple[int, Fraction], ...]
    cut: HalfExp
    tail_log10: float

    @property
    def full(self) -> ExpPoly:
        return self.leading + self.remainder

    def to_json(self) -> Dict[str, Any]:
        return {
            "which": self.which,
            "sign": self.sign,
            "leading": self.leading.to_json(),
            "remainder_terms": len(self.remainder.terms),
            "small_t_terms": len(self.small_t),
            "cut": str(self.cut),
            "tail_log10": self.tail_log10,
        }


def _cut_for(order: Union[int, HalfExp, None]) -> Tuple[int, HalfExp]:
    """(catalog q-order, truncation order); an int keeps terms through q^order."""
    if order is None:
        order = settings.TRUNCATION_ORDER
    if isinstance(order, HalfExp):
        return max(1, (order.twice_value + 1) // 2), order
    return order, HalfExp(2 * order + 1)


def _terms_below(series: FormalSeries, cut: HalfExp) -> List[Tuple[int, Fraction]]:
    return [(k, c) for k, c in series.terms.items() if k < cut.twice_value]


def _log10_mag(c: Fraction, pi_power: int, k: int) -> float:
    """log10 |c·π^p·e^{-πk}|"""
    return float(mpmath.log10(abs(mpmath.mpf(c.numerator) / c.denominator)) + pi_power * mpmath.log10(mpmath.pi) - k * mpmath.pi / mpmath.log(10))


@lru_cache(maxsize=16)
def integrand_series(which: str, order: Union[int, HalfExp, None] = None) -> IntegrandSeries:
    _check_which(which)
    q_order, cut = _cut_for(order)
    catalog = load_catalog(q_order)
    large: List[ExpTerm] = []
    tails: List[float] = []
    for name, pi_power, t_degree, scalar in _LARGE_T[which]:
        terms = _terms_below(catalog.body(name), cut)
        for k, c in terms:
            large.append(ExpTerm(c * scalar, pi_power, t_degree, Fraction(-k)))
        if terms:
            tails.append(_log10_mag(terms[-1][1], pi_power, terms[-1][0]))
    full = ExpPoly(tuple(large)).collect()

    name, scalar = _SMALL_T[which]
    small = tuple((k, c * scalar) for k, c in _terms_below(catalog.body(name), cut))
    if small:
        tails.append(_log10_mag(small[-1][1], 0, small[-1][0]))

    tail_log10 = max(tails) + mpmath.log10(TAIL_SAFETY) if tails else float("-inf")
    return IntegrandSeries(
        which=which,
        sign=_OUTER_SIGN[which],
        leading=full.growing(),
        remainder=full.decaying(),
        small_t=small,
        cut=cut,
        tail_log10=float(tail_log10),
    )


def support_digits(which: str, order: Union[int, HalfExp, None] = None) -> int:
    """Decimal digits the truncated series can deliver."""
    return int(-integrand_series(which, order).tail_log10)


@lru_cache(maxsize=32)
def _numeric_terms(which: str, order: Union[int, HalfExp, None], dps: int):
    """mpf data at dps: ((coef·π^p, j, k), ...) for t ≥ 1 and ((k, coef), ...) for t ≤ 1."""
    series = integrand_series(which, order)
    with mpmath.workdps(dps):
        large = tuple(
            (
                mpmath.mpf(t.c.numerator) / t.c.denominator * mpmath.pi ** t.pi_power,
                t.t_degree,
                int(-t.rate),
            )
            for t in series.full.terms
        )
        small = tuple((k, mpmath.mpf(c.numerator) / c.denominator) for k, c in series.small_t)
    return large, small


def _exp_sum(j: int, a: mpmath.mpf) -> mpmath.mpf:
    """Σ_{i≤j} a^i/i!"""
    acc, term = mpmath.mpf(1), mpmath.mpf(1)
    for i in range(1, j + 1):
        term = term * a / i
        acc += term
    return acc


def upper_gamma_ratio(j: int, a: mpmath.mpf) -> mpmath.mpf:
    """G_j(a) = ∫₁^∞ t^j e^{-at} dt, continued to a ≤ 0 (a ≠ 0)."""
    return factorial(j) * mpmath.exp(-a) * _exp_sum(j, a) / a ** (j + 1)


def _half_versine_series(a: mpmath.mpf, j: int, derivative: bool = False) -> mpmath.mpf:
    """
    W_j(a) = sin²(a/2)/a^{j+1} = Σ_{n≥1} (-1)^{n+1} a^{2n-j-1} / (2·(2n)!)
    and its a-derivative; analytic at a = 0 for j ≤ 1.
    """
    if j > 1:
        raise ValueError(f"pole of order {j + 1} is not cancelled by sin²")
    eps = mpmath.eps
    acc = mpmath.mpf(0)
    n = 1
    while True:
        e = 2 * n - j - 1
        sign = 1 if n % 2 else -1
        denom = 2 * mpmath.factorial(2 * n)
        if derivative:
            term = sign * e * a ** (e - 1) / denom if e else mpmath.mpf(0)
        else:
            term = sign * a ** e / denom
        acc += term
        if n > 2 and abs(term) <= eps * max(abs(acc), 1):
            return acc
        n += 1


def _pole_product(j: int, a: mpmath.mpf, derivative: bool = False) -> mpmath.mpf:
    """sin²(a/2)·G_j(a) and its a-derivative near a = 0."""
    jf = factorial(j)
    e = mpmath.exp(-a)
    w = _half_versine_series(a, j)
    if not derivative:
        return jf * e * _exp_sum(j, a) * w
    dw = _half_versine_series(a, j, derivative=True)
    return jf * e * (-(a ** j) / jf * w + _exp_sum(j, a) * dw)


def _near_pole(k: int, r2: mpmath.mpf) -> bool:
    return k % 2 == 0 and abs(r2 + k) < settings.NEAR_POLE_THRESHOLD


def _large_t_part(large, r: mpmath.mpf, derivative: bool) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """(Σ sin²·∫₁^∞, magnitude of the last term of each group) or their r-derivatives."""
    r2 = r * r
    pi = mpmath.pi
    s = mpmath.sin(pi * r2 / 2)
    S = s * s
    dS = pi * r * mpmath.sin(pi * r2)
    total = mpmath.mpf(0)
    last: Dict[int, mpmath.mpf] = {}
    for c, j, k in large:
        a = pi * (r2 + k)
        if _near_pole(k, r2):
            value = c * (2 * pi * r * _pole_product(j, a, True) if derivative else _pole_product(j, a))
        elif derivative:
            value = c * (dS * upper_gamma_ratio(j, a) - 2 * pi * r * S * upper_gamma_ratio(j + 1, a))
        else:
            value = c * S * upper_gamma_ratio(j, a)
        total += value
        last[j] = abs(value)
    return total, max(last.values(), default=mpmath.mpf(0))


def _small_t_part(small, r: mpmath.mpf, derivative: bool) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """∫₀¹ t¹⁰·Σ c_k e^{-πk/t}·e^{-πr²t} dt (or its r-derivative) and the quadrature error."""
    pi = mpmath.pi
    r2 = r * r

    def h(t):
        if t == 0:
            return mpmath.mpf(0)
        u = mpmath.exp(-pi / t)
        acc = mpmath.fsum(c * u ** k for k, c in small)
        weight = t ** 10 * mpmath.exp(-pi * r2 * t)
        if derivative:
            weight *= -2 * pi * r * t
        return acc * weight

    value, err = mpmath.quad(h, [0, mpmath.mpf(1) / 4, mpmath.mpf(1) / 2, 1], error=True)
    return value, err


def _v(which: str, r: Real, digits: Optional[int], order, derivative: bool) -> BallValue:
    _check_which(which)
    digits = settings.EVAL_DIGITS if digits is None else digits
    if digits > support_digits(which, order):
        raise PrecisionError(
            f"{digits} digits requested but the series truncated at {integrand_series(which, order).cut} "
            f"supports only {support_digits(which, order)}"
        )
    dps = digits + settings.GUARD_DIGITS
    large, small = _numeric_terms(which, order, dps)
    with mpmath.workdps(dps):
        r = _check_r(mpmath.mpf(r))
        sign = _OUTER_SIGN[which]
        big, big_last = _large_t_part(large, r, derivative)
        integral, quad_err = _small_t_part(small, r, derivative=False)
        s = mpmath.sin(mpmath.pi * r * r / 2)
        S = s * s
        if derivative:
            d_integral, d_err = _small_t_part(small, r, derivative=True)
            near = S * d_integral + mpmath.pi * r * mpmath.sin(mpmath.pi * r * r) * integral
            quad_err = S * d_err + abs(mpmath.pi * r) * quad_err
        else:
            near = S * integral
            quad_err = S * quad_err
        mid = 4 * sign * (big + near)
        tail = TAIL_SAFETY * big_last + mpmath.mpf(10) ** integrand_series(which, order).tail_log10
        radius = 4 * (tail + quad_err) + mpmath.mpf(10) ** (-dps + 5) * max(1, abs(mid))
        return BallValue(+mid, +radius, Rigor.HEURISTIC)


def eval_magic(which: str, r: Real, digits: Optional[int] = None, order=None) -> BallValue:
    """v with a(r) = i·v (which='a') or b(r) = i·v (which='b')."""
    return _v(which, r, digits, order, derivative=False)


def eval_magic_derivative(which: str, r: Real, digits: Optional[int] = None, order=None) -> BallValue:
    """d/dr of v, differentiated term by term."""
    return _v(which, r, digits, order, derivative=True)


def normalizer(which: str) -> mpmath.mpf:
    """Factor taking v_a to the a-part of f (π/113218560) or v_b to its b-part (1/(262080π))."""
    if which == "a":
        return mpmath.pi * A_NORMALIZER.numerator / A_NORMALIZER.denominator
    if which == "b":
        return mpmath.mpf(B_NORMALIZER.numerator) / B_NORMALIZER.denominator / mpmath.pi
    raise ValueError(f"unknown eigenfunction '{which}'; expected 'a' or 'b'")


def _combine(which: str, va: BallValue, vb: BallValue, dps: int) -> BallValue:
    if which not in ("f", "fhat"):
        raise ValueError(f"unknown function '{which}'; expected 'f' or 'fhat'")
    with mpmath.workdps(dps):
        b_part = vb.scale(normalizer("b"))
        return va.scale(normalizer("a")) + (b_part if which == "f" else -b_part)


def eval_f(which: str, r: Real, digits: Optional[int] = None, order=None) -> BallValue:
    """
    f = (π/113218560)·v_a + v_b/(262080π); f̂ flips the b term since
    â = a and b̂ = -b.
    """
    digits = settings.EVAL_DIGITS if digits is None else digits
    va = eval_magic("a", r, digits, order)
    vb = eval_magic("b", r, digits, order)
    return _combine(which, va, vb, digits + settings.GUARD_DIGITS)


def derivative_f(which: str, r: Real, digits: Optional[int] = None, order=None) -> BallValue:
    digits = settings.EVAL_DIGITS if digits is None else digits
    va = eval_magic_derivative("a", r, digits, order)
    vb = eval_magic_derivative("b", r, digits, order)
    return _combine(which, va, vb, digits + settings.GUARD_DIGITS)


def finite_difference_f(which: str, r: Real, digits: Optional[int] = None, h: Real = "1e-6", order=None) -> mpmath.mpf:
    """Central difference of eval_f, for cross-checking derivative_f."""
    digits = settings.EVAL_DIGITS if digits is None else digits
    with mpmath.workdps(digits + settings.GUARD_DIGITS):
        r, h = mpmath.mpf(r), mpmath.mpf(h)
        hi = eval_f(which, r + h, digits, order).midpoint
        lo = eval_f(which, r - h, digits, order).midpoint
        return (hi - lo) / (2 * h)


def grid_points(start: Real, stop: Real, count: int) -> List[mpmath.mpf]:
    if count < 1:
        raise ValueError("grid needs at least one point")
    start, stop = mpmath.mpf(start), mpmath.mpf(stop)
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def sample_row(r: Real, digits: Optional[int] = None, order=None) -> Dict[str, Any]:
    """One grid row; a and b are evaluated once and shared by f and f̂."""
    digits = settings.EVAL_DIGITS if digits is None else digits
    dps = digits + settings.GUARD_DIGITS
    va = eval_magic("a", r, digits, order)
    vb = eval_magic("b", r, digits, order)
    f = _combine("f", va, vb, dps)
    fhat = _combine("fhat", va, vb, dps)
    return {
        "r": mpmath.nstr(mpmath.mpf(r), 17),
        "f": mpmath.nstr(f.midpoint, digits),
        "f_radius": mpmath.nstr(f.radius, 3),
        "fhat": mpmath.nstr(fhat.midpoint, digits),
        "fhat_radius": mpmath.nstr(fhat.radius, 3),
        "rigor": f.rigor.value,
    }


def sample_grid(start: Real, stop: Real, count: int, digits: Optional[int] = None, order=None) -> List[Dict[str, Any]]:
    rows = [sample_row(r, digits, order) for r in grid_points(start, stop, count)]
    logger.info("Sampled grid", extra={"extra": {"start": str(start), "stop": str(stop), "count": count}})
    return rows
