"""
Certified coefficient-growth bounds |coef of q^{shift + n·step}| ≤ C·(n+1)^k.

The composition rules are the elementary ones: a Cauchy product of two
bounded series is bounded by the product of the constants with exponents
added plus one (the convolution has n+1 terms), and a sum by the sum of
the constants with the larger exponent.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

from app.errors import InconsistentGridError, UnknownBoundError
from app.forms.numerators import NUMERATOR_RECIPES, Recipe
from app.series import FormalSeries, HalfExp


class Grid(str, Enum):
    INTEGER = "integer"
    HALF = "half"

    @property
    def step_twice(self) -> int:
        """Grid step measured in half-powers of q."""
        return 2 if self is Grid.INTEGER else 1


@dataclass(frozen=True)
class PowerBound:
    C: Fraction
    k: int
    grid: Grid = Grid.INTEGER
    shift: HalfExp = HalfExp(0)

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        if self.C <= 0:
            raise ValueError(f"bound constant must be positive, got {self.C}")
        if self.k < 0:
            raise ValueError(f"bound exponent must be nonnegative, got {self.k}")
        if self.grid is Grid.INTEGER and not self.shift.is_integral:
            raise InconsistentGridError(f"integer-grid bound cannot carry shift {self.shift}")

    @property
    def shift_steps(self) -> int:
        """The shift measured in grid steps."""
        return self.shift.twice_value // self.grid.step_twice

    def step_index(self, e: HalfExp) -> Optional[int]:
        """Grid index n of exponent e, or None when e is off the grid."""
        offset = e.twice_value - self.shift.twice_value
        if offset % self.grid.step_twice:
            return None
        return offset // self.grid.step_twice

    def value_at(self, n: int) -> Fraction:
        return self.C * (n + 1) ** self.k

    def to_json(self) -> Dict[str, Any]:
        return {
            "C": str(self.C),
            "k": self.k,
            "grid": self.grid.value,
            "shift": str(self.shift),
        }


BASE_BOUNDS: Dict[str, PowerBound] = {
    "E2": PowerBound(Fraction(24), 2, Grid.INTEGER),
    "E4": PowerBound(Fraction(240), 4, Grid.INTEGER),
    "E6": PowerBound(Fraction(504), 6, Grid.INTEGER),
    "Theta4": PowerBound(Fraction(24), 2, Grid.HALF),
}

# catalog factor names that share a base bound
_BASE_ALIASES = {"Th00_4": "Theta4", "Th01_4": "Theta4", "Th10_4": "Theta4"}


def base_bound(name: str) -> PowerBound:
    try:
        return BASE_BOUNDS[_BASE_ALIASES.get(name, name)]
    except KeyError:
        raise UnknownBoundError(f"no base bound for '{name}'") from None


def bound_regrid(b: PowerBound) -> PowerBound:
    """
    Re-index an integer-grid bound on the half grid.

    Odd half-steps carry zero coefficients and the index n becomes 2n,
    with (n+1) ≤ (2n+1), so C and k carry over unchanged.
    """
    if b.grid is Grid.HALF:
        return b
    return PowerBound(b.C, b.k, Grid.HALF, b.shift)


def _aligned(a: PowerBound, b: PowerBound):
    if a.grid is b.grid:
        return a, b
    return bound_regrid(a), bound_regrid(b)


def bound_product(a: PowerBound, b: PowerBound) -> PowerBound:
    a, b = _aligned(a, b)
    return PowerBound(a.C * b.C, a.k + b.k + 1, a.grid, a.shift + b.shift)


def bound_sum(a: PowerBound, b: PowerBound) -> PowerBound:
    """
    Bound for a + b. The smaller shift is kept: indexing a series from an
    earlier exponent only increases n.
    """
    a, b = _aligned(a, b)
    return PowerBound(a.C + b.C, max(a.k, b.k), a.grid, min(a.shift, b.shift))


def bound_scale(b: PowerBound, c: Fraction) -> PowerBound:
    c = abs(Fraction(c))
    if c == 0:
        raise ValueError("scaling a bound by zero; drop the term instead")
    return PowerBound(b.C * c, b.k, b.grid, b.shift)


def bound_shift(b: PowerBound, s: HalfExp) -> PowerBound:
    """Bound for q^s times the bounded series."""
    if b.grid is Grid.INTEGER and not s.is_integral:
        b = bound_regrid(b)
    return PowerBound(b.C, b.k, b.grid, b.shift + s)


def bound_for_monomials(terms: Recipe, base: Optional[Mapping[str, PowerBound]] = None) -> PowerBound:
    """
    Bound of Σ c·Π factors: product rule along each monomial, left to
    right, then the sum rule across monomials.
    """
    lookup = base if base is not None else {}
    total: Optional[PowerBound] = None
    for coeff, names in terms:
        mono: Optional[PowerBound] = None
        for name in names:
            factor = lookup[name] if name in lookup else base_bound(name)
            mono = factor if mono is None else bound_product(mono, factor)
        mono = bound_scale(mono, coeff)
        total = mono if total is None else bound_sum(total, mono)
    if total is None:
        raise UnknownBoundError("empty monomial list")
    return total


def numerator_bounds() -> Dict[str, PowerBound]:
    """Derived bounds for every Δ²-cleared numerator the certifier consumes."""
    table = {
        name: bound_for_monomials(terms)
        for name, terms in NUMERATOR_RECIPES.items()
        if name != "Delta"
    }
    d = bound_for_monomials(NUMERATOR_RECIPES["Delta"])
    table["Delta2"] = bound_product(d, d)
    table["Delta2_over_q"] = bound_shift(table["Delta2"], HalfExp(-2))
    return table


def numerator_bound(name: str) -> PowerBound:
    table = numerator_bounds()
    try:
        return table[name]
    except KeyError:
        raise UnknownBoundError(f"no derived bound for '{name}'") from None


@dataclass(frozen=True)
class EmpiricalCheck:
    ok: bool
    first_violation: Optional[HalfExp] = None
    checked: int = 0


def check_empirical(b: PowerBound, s: FormalSeries) -> EmpiricalCheck:
    """Compare every computed coefficient of s with the bound."""
    checked = 0
    for e, c in s.items():
        n = b.step_index(e)
        if n is None or n < 0 or abs(c) > b.value_at(n):
            return EmpiricalCheck(False, e, checked)
        checked += 1
    return EmpiricalCheck(True, None, checked)
