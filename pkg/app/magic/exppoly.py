"""
Exponential polynomials in t, their Laplace kernels in r², and exact
values of the form rational·π^p·i^m·√2^s.
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, List, Tuple, Union

import mpmath

RatLike = Union[int, Fraction]

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _pi_text(p: int, ascii_only: bool) -> str:
    if ascii_only:
        return "pi" if p == 1 else f"pi^{p}"
    return "π" if p == 1 else "π" + str(p).translate(_SUPERSCRIPTS)


@dataclass(frozen=True)
class ExpTerm:
    """c·π^p·t^j·e^{rate·πt}"""

    c: Fraction
    pi_power: int
    t_degree: int
    rate: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {"c": str(self.c), "pi_power": self.pi_power, "t_degree": self.t_degree, "rate": str(self.rate)}


@dataclass(frozen=True)
class ExpPoly:
    terms: Tuple[ExpTerm, ...] = ()

    def __post_init__(self):
        for term in self.terms:
            if term.t_degree < 0:
                raise ValueError("negative power of t in an exponential polynomial")
            if (2 * term.rate).denominator != 1:
                raise ValueError(f"rate {term.rate} is off the half-integer grid")

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[RatLike, int, int, RatLike]]) -> "ExpPoly":
        return cls(tuple(ExpTerm(Fraction(c), p, j, Fraction(rate)) for c, p, j, rate in terms)).collect()

    def collect(self) -> "ExpPoly":
        """Merge like terms, drop zeros, order by decreasing rate then degree."""
        acc: Dict[Tuple[int, int, Fraction], Fraction] = defaultdict(Fraction)
        for term in self.terms:
            acc[(term.pi_power, term.t_degree, term.rate)] += term.c
        merged = [ExpTerm(c, p, j, rate) for (p, j, rate), c in acc.items() if c]
        merged.sort(key=lambda t: (-t.rate, -t.t_degree, t.pi_power))
        return ExpPoly(tuple(merged))

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        return ExpPoly(self.terms + other.terms).collect()

    def scale(self, c: RatLike, pi_power: int = 0) -> "ExpPoly":
        c = Fraction(c)
        return ExpPoly(tuple(ExpTerm(t.c * c, t.pi_power + pi_power, t.t_degree, t.rate) for t in self.terms)).collect()

    def growing(self) -> "ExpPoly":
        return ExpPoly(tuple(t for t in self.terms if t.rate >= 0))

    def decaying(self) -> "ExpPoly":
        return ExpPoly(tuple(t for t in self.terms if t.rate < 0))

    def coefficient(self, t_degree: int, rate: RatLike) -> Dict[int, Fraction]:
        """{pi_power: c} of the t^j·e^{rate·πt} terms."""
        rate = Fraction(rate)
        return {t.pi_power: t.c for t in self.terms if t.t_degree == t_degree and t.rate == rate}

    def kernel(self) -> "RationalKernel":
        """
        ∫₀^∞ (·)·e^{-πr²t} dt termwise, continued analytically in r:
        t^j·e^{mπt} ↦ j!/(π(r² - m))^{j+1}.
        """
        return RationalKernel.from_poles(
            (t.rate, t.t_degree + 1, t.c * factorial(t.t_degree), t.pi_power - t.t_degree - 1)
            for t in self.terms
        )

    def __call__(self, t: mpmath.mpf) -> mpmath.mpf:
        return mpmath.fsum(
            mpmath.mpf(term.c.numerator) / term.c.denominator
            * mpmath.pi ** term.pi_power
            * t ** term.t_degree
            * mpmath.exp(mpmath.mpf(term.rate.numerator) / term.rate.denominator * mpmath.pi * t)
            for term in self.terms
        )

    def to_json(self) -> List[Dict[str, Any]]:
        return [t.to_json() for t in self.terms]

    def render(self, ascii_only: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, term in enumerate(self.terms):
            sign = "-" if term.c < 0 else "+"
            if not ascii_only:
                sign = "−" if term.c < 0 else "+"
            mag = abs(term.c)
            coeff = str(mag)
            if term.pi_power > 0:
                coeff += ("*" if ascii_only else "·") + _pi_text(term.pi_power, ascii_only)
            elif term.pi_power < 0:
                coeff += "/" + _pi_text(-term.pi_power, ascii_only)
            factors = [coeff]
            if term.t_degree:
                factors.append("t" if term.t_degree == 1 else (f"t^{term.t_degree}" if ascii_only else "t" + str(term.t_degree).translate(_SUPERSCRIPTS)))
            if term.rate:
                pi = "pi" if ascii_only else "π"
                factors.append(f"e^{{{term.rate}{pi}t}}")
            body = ("*" if ascii_only else "·").join(factors)
            if i == 0:
                parts.append(body if term.c > 0 else ("-" if ascii_only else "−") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


@dataclass(frozen=True)
class Pole:
    """coefficient·π^pi_power / (r² - location)^order"""

    location: Fraction
    order: int
    coefficient: Fraction
    pi_power: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "location": str(self.location),
            "order": self.order,
            "coefficient": str(self.coefficient),
            "pi_power": self.pi_power,
        }


@dataclass(frozen=True)
class RationalKernel:
    poles: Tuple[Pole, ...]

    @classmethod
    def from_poles(cls, poles: Iterable[Tuple[RatLike, int, RatLike, int]]) -> "RationalKernel":
        acc: Dict[Tuple[Fraction, int, int], Fraction] = defaultdict(Fraction)
        for location, order, coefficient, pi_power in poles:
            acc[(Fraction(location), order, pi_power)] += Fraction(coefficient)
        merged = [Pole(loc, order, c, p) for (loc, order, p), c in acc.items() if c]
        merged.sort(key=lambda pole: (-pole.location, -pole.order, pole.pi_power))
        return cls(tuple(merged))

    def laurent(self, location: RatLike, order: int) -> Dict[int, Fraction]:
        """{pi_power: coefficient} of 1/(r² - location)^order."""
        location = Fraction(location)
        return {p.pi_power: p.coefficient for p in self.poles if p.location == location and p.order == order}

    @property
    def locations(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({p.location for p in self.poles}))

    def __call__(self, r2: mpmath.mpf) -> mpmath.mpf:
        return mpmath.fsum(
            mpmath.mpf(p.coefficient.numerator) / p.coefficient.denominator
            * mpmath.pi ** p.pi_power
            / (r2 - mpmath.mpf(p.location.numerator) / p.location.denominator) ** p.order
            for p in self.poles
        )

    def to_json(self) -> List[Dict[str, Any]]:
        return [p.to_json() for p in self.poles]

    def render(self, ascii_only: bool = False) -> str:
        pieces = []
        for p in self.poles:
            den = "r^2" if p.location == 0 else f"(r^2-{p.location})"
            if p.order > 1:
                den = f"{den}^{p.order}"
            pi = _pi_text(-p.pi_power, ascii_only) if p.pi_power < 0 else ""
            pieces.append(f"{p.coefficient}/({pi}{'*' if pi else ''}{den})")
        return " + ".join(pieces) if pieces else "0"


@dataclass(frozen=True)
class MagicValue:
    """
    rational·π^pi_power·i^i_power·√2^sqrt2, normalized so that
    i_power and sqrt2 are 0 or 1 and zero has no other factors.
    """

    rational: Fraction
    pi_power: int = 0
    i_power: int = 0
    sqrt2: int = 0

    def __post_init__(self):
        rational = Fraction(self.rational)
        i_power = self.i_power % 4
        if i_power >= 2:
            rational, i_power = -rational, i_power - 2
        sqrt2 = self.sqrt2
        if sqrt2 < 0:
            raise ValueError("negative power of √2")
        rational *= 2 ** (sqrt2 // 2)
        sqrt2 %= 2
        pi_power = self.pi_power
        if rational == 0:
            pi_power = i_power = sqrt2 = 0
        object.__setattr__(self, "rational", rational)
        object.__setattr__(self, "i_power", i_power)
        object.__setattr__(self, "sqrt2", sqrt2)
        object.__setattr__(self, "pi_power", pi_power)

    @classmethod
    def zero(cls) -> "MagicValue":
        return cls(Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.rational == 0

    def _shape(self) -> Tuple[int, int, int]:
        return (self.pi_power, self.i_power, self.sqrt2)

    def __mul__(self, other: Union["MagicValue", RatLike]) -> "MagicValue":
        if not isinstance(other, MagicValue):
            return MagicValue(self.rational * Fraction(other), self.pi_power, self.i_power, self.sqrt2)
        return MagicValue(
            self.rational * other.rational,
            self.pi_power + other.pi_power,
            self.i_power + other.i_power,
            self.sqrt2 + other.sqrt2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "MagicValue") -> "MagicValue":
        if other.is_zero:
            raise ZeroDivisionError("division by an exact zero")
        # 1/(i·√2) = -i·√2/2
        inverse = MagicValue(
            1 / other.rational * Fraction(1, 2 ** other.sqrt2), -other.pi_power, -other.i_power, other.sqrt2
        )
        return self * inverse

    def __add__(self, other: "MagicValue") -> "MagicValue":
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self._shape() != other._shape():
            raise ValueError(f"cannot add {self.render()} and {other.render()} exactly")
        return MagicValue(self.rational + other.rational, *self._shape())

    def __neg__(self) -> "MagicValue":
        return MagicValue(-self.rational, *self._shape())

    def __sub__(self, other: "MagicValue") -> "MagicValue":
        return self + (-other)

    def real_coefficient(self) -> mpmath.mpf:
        """The real number multiplying i^i_power."""
        value = mpmath.mpf(self.rational.numerator) / self.rational.denominator
        return value * mpmath.pi ** self.pi_power * mpmath.sqrt(2) ** self.sqrt2

    def to_json(self) -> Dict[str, Any]:
        return {
            "rational": str(self.rational),
            "pi_power": self.pi_power,
            "i_power": self.i_power,
            "sqrt2": self.sqrt2,
            "text": self.render(),
        }

    def render(self, ascii_only: bool = False) -> str:
        if self.is_zero:
            return "0"
        dot = "*" if ascii_only else "·"
        num: List[str] = []
        if abs(self.rational.numerator) != 1:
            num.append(str(abs(self.rational.numerator)))
        if self.sqrt2:
            num.append("sqrt(2)" if ascii_only else "√2")
        if self.pi_power > 0:
            num.append(_pi_text(self.pi_power, ascii_only))
        if self.i_power:
            num.append("i")
        den: List[str] = []
        if self.rational.denominator != 1:
            den.append(str(self.rational.denominator))
        if self.pi_power < 0:
            den.append(_pi_text(-self.pi_power, ascii_only))
        text = dot.join(num) if num else "1"
        if den:
            text += "/" + (den[0] if len(den) == 1 else "(" + dot.join(den) + ")")
        if self.rational < 0:
            text = ("-" if ascii_only else "−") + text
        return text

    def __str__(self) -> str:
        return self.render()
