"""
Exact univariate polynomials in u over QQ, backed by sympy.Poly.
"""
from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly
from sympy.polys.polyerrors import ExactQuotientFailed

RatLike = Union[int, Fraction, sympy.Rational]

U = sympy.Symbol("u", positive=True)


def to_sympy(c: RatLike) -> sympy.Rational:
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.Rational(c)


def to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


class RatPoly:
    """
    Thin wrapper over a sympy Poly in u with domain QQ.

    `coeffs` reads low to high with no trailing zeros; the zero polynomial
    has an empty tuple and degree -1.
    """

    __slots__ = ("poly",)

    def __init__(self, coeffs: Union[Iterable[RatLike], Poly]):
        if isinstance(coeffs, Poly):
            self.poly = coeffs if coeffs.domain == QQ else coeffs.set_domain(QQ)
        else:
            high_to_low = [to_sympy(c) for c in coeffs][::-1]
            self.poly = Poly.from_list(high_to_low or [0], U, domain=QQ)

    @classmethod
    def from_exponents(cls, terms: Mapping[int, RatLike]) -> "RatPoly":
        """Build from {exponent: coefficient}; exponents must be ≥ 0."""
        if terms and min(terms) < 0:
            raise ValueError("negative exponent in polynomial")
        rep = {(e,): to_sympy(c) for e, c in terms.items() if c}
        return cls(Poly.from_dict(rep or {(0,): 0}, U, domain=QQ))

    @classmethod
    def from_roots(cls, roots: Sequence[RatLike]) -> "RatPoly":
        p = Poly(1, U, domain=QQ)
        for r in roots:
            p = p * Poly(U - to_sympy(r), U, domain=QQ)
        return cls(p)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        if self.poly.is_zero:
            return ()
        return tuple(to_fraction(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        return -1 if self.poly.is_zero else int(self.poly.degree())

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __call__(self, x: RatLike) -> Fraction:
        return to_fraction(self.poly.eval(to_sympy(x)))

    def integer_coefficients(self) -> List[int]:
        """Low-to-high integer coefficients of a positive multiple of p."""
        if self.poly.is_zero:
            return []
        _, cleared = self.poly.clear_denoms(convert=True)
        return [int(c) for c in reversed(cleared.all_coeffs())]

    def sign_at(self, x: RatLike) -> int:
        """Sign of p(x), evaluated homogeneously in integers."""
        return homogeneous_sign(self.integer_coefficients(), Fraction(x))

    def derivative(self) -> "RatPoly":
        return RatPoly(self.poly.diff(U))

    def __add__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly(self.poly + other.poly)

    def __neg__(self) -> "RatPoly":
        return RatPoly(-self.poly)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly(self.poly - other.poly)

    def __mul__(self, other: Union["RatPoly", RatLike]) -> "RatPoly":
        if isinstance(other, RatPoly):
            return RatPoly(self.poly * other.poly)
        return RatPoly(self.poly * Poly(to_sympy(other), U, domain=QQ))

    __rmul__ = __mul__

    def divmod(self, other: "RatPoly") -> Tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self.poly.div(other.poly)
        return RatPoly(q), RatPoly(r)

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        try:
            return RatPoly(self.poly.exquo(other.poly))
        except ExactQuotientFailed as e:
            raise ValueError("polynomial division is not exact") from e

    def monic(self) -> "RatPoly":
        return self if self.is_zero() else RatPoly(self.poly.monic())

    def squarefree(self) -> "RatPoly":
        """p / gcd(p, p'): same distinct roots, all simple."""
        return RatPoly(self.poly.sqf_part())

    def strip_low_powers(self) -> Tuple["RatPoly", int]:
        """Divide out u^m for the largest m dividing p; return (p/u^m, m)."""
        if self.is_zero():
            return self, 0
        (m,), rest = self.poly.terms_gcd()
        return RatPoly(rest), m

    def hash(self) -> str:
        text = ",".join(f"{c.numerator}/{c.denominator}" for c in self.coeffs)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "RatPoly(0)"
        parts = [f"{c}*u^{i}" for i, c in enumerate(self.coeffs) if c]
        if len(parts) > 6:
            parts = parts[:3] + ["..."] + parts[-2:]
        return f"RatPoly({' + '.join(parts)})"


def homogeneous_sign(ints: Sequence[int], x: Fraction) -> int:
    """Sign of Σ c_i x^i from integer coefficients, as Σ c_i num^i den^(d-i)."""
    num, den = x.numerator, x.denominator
    acc = 0
    scale = 1
    for c in reversed(ints):
        acc = acc * num + c * scale
        scale *= den
    return (acc > 0) - (acc < 0)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over QQ."""
    return RatPoly(a.poly.gcd(b.poly)).monic()
