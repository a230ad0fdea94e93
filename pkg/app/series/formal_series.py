"""
Truncated Laurent series in q^{1/2} with exact rational coefficients.

Exponents live on the half-integer grid: a HalfExp stores twice the
exponent of q, so q^{3/2} is HalfExp(3) and q^2 is HalfExp(4). A series
knows every coefficient strictly below its truncation order and claims
nothing at or above it.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.errors import DegenerateSeriesError, TruncationError

Rat = Fraction

RatLike = Union[int, Fraction]

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


@dataclass(frozen=True, order=True)
class HalfExp:
    """Exponent of q on the half-integer grid (twice_value / 2)."""

    twice_value: int

    @classmethod
    def from_q(cls, n: int) -> "HalfExp":
        return cls(2 * n)

    @classmethod
    def parse(cls, text: str) -> "HalfExp":
        """Parse "2", "-1", "1/2" or "-3/2"."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) != 2:
                raise ValueError(f"not a half-integer exponent: {text}")
            return cls(int(num))
        return cls(2 * int(text))

    @property
    def is_integral(self) -> bool:
        return self.twice_value % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __add__(self, other: "HalfExp") -> "HalfExp":
        return HalfExp(self.twice_value + other.twice_value)

    def __sub__(self, other: "HalfExp") -> "HalfExp":
        return HalfExp(self.twice_value - other.twice_value)

    def __neg__(self) -> "HalfExp":
        return HalfExp(-self.twice_value)

    def __mul__(self, k: int) -> "HalfExp":
        return HalfExp(self.twice_value * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def _as_rat(value: RatLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class FormalSeries:
    """
    Immutable truncated Laurent series on the q^{1/2} grid.

    Coefficients are kept sparse (zeros elided) keyed by twice the exponent.
    """

    __slots__ = ("_terms", "_min", "_trunc")

    def __init__(
        self,
        terms: Mapping[int, RatLike],
        min_exp: HalfExp,
        trunc_order: HalfExp,
    ):
        if min_exp > trunc_order:
            raise ValueError(f"min_exp {min_exp} exceeds trunc_order {trunc_order}")
        lo, hi = min_exp.twice_value, trunc_order.twice_value
        clean: Dict[int, Fraction] = {}
        for e in sorted(terms):
            c = terms[e]
            if not c:
                continue
            if e < lo:
                raise ValueError(f"coefficient at twice-exponent {e} lies below min_exp {min_exp}")
            if e >= hi:
                continue
            clean[e] = _as_rat(c)
        self._terms = clean
        self._min = min_exp
        self._trunc = trunc_order

    # construction helpers

    @classmethod
    def from_q_coefficients(
        cls, coeffs: Sequence[RatLike], start: int = 0, trunc: Optional[int] = None
    ) -> "FormalSeries":
        """Series Σ coeffs[i]·q^{start+i}, exact through the listed terms."""
        stop = start + len(coeffs) if trunc is None else trunc
        terms = {2 * (start + i): c for i, c in enumerate(coeffs)}
        return cls(terms, HalfExp.from_q(start), HalfExp.from_q(stop))

    @classmethod
    def monomial(cls, coeff: RatLike, exp: HalfExp, trunc_order: HalfExp) -> "FormalSeries":
        return cls({exp.twice_value: coeff}, min(exp, trunc_order), trunc_order)

    @classmethod
    def one(cls, trunc_order: HalfExp) -> "FormalSeries":
        return cls.monomial(1, HalfExp(0), trunc_order)

    @classmethod
    def zero(cls, trunc_order: HalfExp, min_exp: Optional[HalfExp] = None) -> "FormalSeries":
        return cls({}, min_exp if min_exp is not None else min(HalfExp(0), trunc_order), trunc_order)

    # accessors

    @property
    def min_exp(self) -> HalfExp:
        return self._min

    @property
    def trunc_order(self) -> HalfExp:
        return self._trunc

    @property
    def terms(self) -> Mapping[int, Fraction]:
        """Nonzero coefficients keyed by twice the exponent, ascending."""
        return self._terms

    @property
    def coeffs(self) -> Dict[HalfExp, Fraction]:
        return {HalfExp(e): c for e, c in self._terms.items()}

    def items(self) -> Iterator[Tuple[HalfExp, Fraction]]:
        for e, c in self._terms.items():
            yield HalfExp(e), c

    def leading_exp(self) -> Optional[HalfExp]:
        if not self._terms:
            return None
        return HalfExp(next(iter(self._terms)))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return (
            self._min == other._min
            and self._trunc == other._trunc
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._min, self._trunc, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"FormalSeries({render(self)} + O(q^{self._trunc}))"

    def __getstate__(self):
        return (self._terms, self._min, self._trunc)

    def __setstate__(self, state):
        self._terms, self._min, self._trunc = state

    # operators

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        return series_add(self, other)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return series_sub(self, other)

    def __neg__(self) -> "FormalSeries":
        return series_neg(self)

    def __mul__(self, other: Union["FormalSeries", RatLike]) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    def __rmul__(self, other: RatLike) -> "FormalSeries":
        return series_scale(self, other)

    def __truediv__(self, other: RatLike) -> "FormalSeries":
        return series_scale(self, Fraction(1) / _as_rat(other))

    def __pow__(self, n: int) -> "FormalSeries":
        return series_pow(self, n)


def series_add(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    """Coefficientwise sum; known only below the smaller truncation order."""
    terms: Dict[int, Fraction] = dict(a.terms)
    for e, c in b.terms.items():
        terms[e] = terms.get(e, 0) + c
    return FormalSeries(terms, min(a.min_exp, b.min_exp), min(a.trunc_order, b.trunc_order))


def series_neg(a: FormalSeries) -> FormalSeries:
    return FormalSeries({e: -c for e, c in a.terms.items()}, a.min_exp, a.trunc_order)


def series_sub(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return series_add(a, series_neg(b))


def series_scale(a: FormalSeries, c: RatLike) -> FormalSeries:
    c = _as_rat(c)
    return FormalSeries({e: v * c for e, v in a.terms.items()}, a.min_exp, a.trunc_order)


def _integer_form(a: FormalSeries) -> Tuple[List[Tuple[int, int]], int]:
    den = 1
    for c in a.terms.values():
        den = lcm(den, c.denominator)
    return [(e, c.numerator * (den // c.denominator)) for e, c in a.terms.items()], den


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    """Cauchy product on the half-integer grid."""
    min_exp = a.min_exp + b.min_exp
    trunc = min(a.trunc_order + b.min_exp, b.trunc_order + a.min_exp)
    limit = trunc.twice_value

    a_int, a_den = _integer_form(a)
    b_int, b_den = _integer_form(b)
    acc: Dict[int, int] = defaultdict(int)
    for ea, ca in a_int:
        cap = limit - ea
        for eb, cb in b_int:
            if eb >= cap:
                break
            acc[ea + eb] += ca * cb

    den = a_den * b_den
    return FormalSeries({e: Fraction(v, den) for e, v in acc.items() if v}, min_exp, trunc)


def series_normalize(a: FormalSeries) -> FormalSeries:
    """Raise min_exp to the first nonzero coefficient (or the truncation order)."""
    lead = a.leading_exp()
    return FormalSeries(a.terms, lead if lead is not None else a.trunc_order, a.trunc_order)


def series_invert(a: FormalSeries) -> FormalSeries:
    """
    Multiplicative inverse: a·b = 1 + O(q^{trunc}).

    Requires a nonzero coefficient at a.min_exp. The result has
    min_exp = -a.min_exp and trunc_order = a.trunc_order - 2·a.min_exp.
    """
    e0 = a.min_exp.twice_value
    c0 = a.terms.get(e0)
    if not c0:
        raise DegenerateSeriesError(
            f"cannot invert: coefficient at q^{a.min_exp} is zero"
        )
    # relative precision of a / q^{min_exp}
    span = a.trunc_order.twice_value - e0
    shifted = [(e - e0, c) for e, c in a.terms.items() if e != e0]
    inv0 = 1 / c0

    b: Dict[int, Fraction] = {0: inv0}
    for n in range(1, span):
        acc = Fraction(0)
        for k, ck in shifted:
            if k > n:
                break
            bn = b.get(n - k)
            if bn:
                acc += ck * bn
        if acc:
            b[n] = -acc * inv0

    return FormalSeries(
        {e - e0: c for e, c in b.items()},
        HalfExp(-e0),
        HalfExp(span - e0),
    )


def series_pow(a: FormalSeries, n: int) -> FormalSeries:
    if n < 0:
        return series_pow(series_invert(a), -n)
    if n == 0:
        return FormalSeries.one(a.trunc_order - a.min_exp)
    result: Optional[FormalSeries] = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    return result


def series_shift(a: FormalSeries, k: HalfExp) -> FormalSeries:
    """Multiply by q^k."""
    t = k.twice_value
    return FormalSeries({e + t: c for e, c in a.terms.items()}, a.min_exp + k, a.trunc_order + k)


def series_truncate(a: FormalSeries, order: HalfExp) -> FormalSeries:
    trunc = min(order, a.trunc_order)
    return FormalSeries(a.terms, min(a.min_exp, trunc), trunc)


def series_restrict(a: FormalSeries, parity: str) -> FormalSeries:
    """Keep only integral ("even") or half-odd ("odd") exponents."""
    want = {"even": 0, "odd": 1}[parity]
    return FormalSeries(
        {e: c for e, c in a.terms.items() if e % 2 == want}, a.min_exp, a.trunc_order
    )


def flip_half_signs(a: FormalSeries) -> FormalSeries:
    """Negate the q^{m/2} coefficients with m odd (the effect of z -> z+1 on q^{1/2})."""
    return FormalSeries(
        {e: (-c if e % 2 else c) for e, c in a.terms.items()}, a.min_exp, a.trunc_order
    )


def coefficient(a: FormalSeries, e: Union[HalfExp, int]) -> Fraction:
    """Exact coefficient of q^e. Raises TruncationError at or above trunc_order."""
    if isinstance(e, int):
        e = HalfExp.from_q(e)
    if e >= a.trunc_order:
        raise TruncationError(e, a.trunc_order)
    return a.terms.get(e.twice_value, Fraction(0))


def first_difference(a: FormalSeries, b: FormalSeries) -> Optional[HalfExp]:
    """Lowest exponent below the common truncation where a and b disagree."""
    limit = min(a.trunc_order, b.trunc_order).twice_value
    keys = sorted(set(a.terms) | set(b.terms))
    for e in keys:
        if e >= limit:
            break
        if a.terms.get(e, 0) != b.terms.get(e, 0):
            return HalfExp(e)
    return None


def _format_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _unicode_power(e: HalfExp) -> str:
    if e.twice_value == 0:
        return ""
    if e.is_integral:
        n = e.twice_value // 2
        return "q" if n == 1 else "q" + str(n).translate(_SUPERSCRIPTS)
    return f"q^{{{e.twice_value}/2}}"


def _ascii_power(e: HalfExp) -> str:
    if e.twice_value == 0:
        return ""
    if e.twice_value == 2:
        return "q"
    return f"q^{e}"


def render(a: FormalSeries, ascii_only: bool = False, max_terms: Optional[int] = None) -> str:
    """
    Debug rendering "c₀ + c₁·q^{1/2} + …", exponents ascending.

    Coefficients ±1 on nonconstant terms are written as a bare power.
    """
    if a.is_zero():
        return "0"
    minus, times, power = (" - ", "*", _ascii_power) if ascii_only else (" − ", "·", _unicode_power)
    parts: List[str] = []
    for idx, (e, c) in enumerate(a.items()):
        if max_terms is not None and idx >= max_terms:
            parts.append(" + …" if not ascii_only else " + ...")
            break
        mag = abs(c)
        mon = power(e)
        if not mon:
            body = _format_rat(mag)
        elif mag == 1:
            body = mon
        else:
            body = f"{_format_rat(mag)}{times}{mon}"
        if idx == 0:
            parts.append(("-" if ascii_only else "−") + body if c < 0 else body)
        else:
            parts.append((minus if c < 0 else " + ") + body)
    return "".join(parts)


def to_json_rows(a: FormalSeries) -> List[List[Union[int, str]]]:
    """[[twice_exp, "num/den"], ...] rows for golden-file export."""
    return [[e, f"{c.numerator}/{c.denominator}"] for e, c in a.terms.items()]

