"""
Δ²-cleared numerators as polynomials in E2, E4, E6 and the theta fourth powers.

Each recipe is a list of (coefficient, factors) monomials. The same recipes
drive exact series evaluation here and bound composition in app.bounds, so
the certified constants always describe the series actually computed.
"""
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

from app.errors import UnknownFormError
from app.series import FormalSeries, HalfExp, series_add, series_mul, series_scale, series_shift

Monomial = Tuple[Fraction, Tuple[str, ...]]
Recipe = Tuple[Monomial, ...]


def _mono(coeff, *factors: str) -> Monomial:
    return Fraction(coeff), tuple(factors)


def _pow(name: str, n: int) -> Tuple[str, ...]:
    return (name,) * n


A, B, C = "Th01_4", "Th10_4", "Th00_4"

NUMERATOR_RECIPES: Dict[str, Recipe] = {
    # φ·Δ²
    "phi": (
        _mono(25, "E4", "E4", "E4", "E4"),
        _mono(-49, "E6", "E6", "E4"),
        _mono(48, "E6", "E4", "E4", "E2"),
        _mono(-49, "E4", "E4", "E4", "E2", "E2"),
        _mono(25, "E6", "E6", "E2", "E2"),
    ),
    # body of φ1 times Δ²; φ1 = (i/π)·Phi1
    "Phi1": (
        _mono(-288, "E6", "E4", "E4"),
        _mono(588, "E2", "E4", "E4", "E4"),
        _mono(-300, "E2", "E6", "E6"),
    ),
    # body of φ2 times Δ²; φ2 = Phi2/π²
    "Phi2": (
        _mono(1764, "E4", "E4", "E4"),
        _mono(-900, "E6", "E6"),
    ),
    "psiI": (
        _mono(7, *_pow(A, 5), *_pow(B, 2)),
        _mono(7, *_pow(A, 6), B),
        _mono(2, *_pow(A, 7)),
    ),
    "psiS": (
        _mono(-7, *_pow(B, 5), *_pow(A, 2)),
        _mono(-7, *_pow(B, 6), A),
        _mono(-2, *_pow(B, 7)),
    ),
    "psiT": (
        _mono(7, *_pow(C, 5), *_pow(B, 2)),
        _mono(-7, *_pow(C, 6), B),
        _mono(2, *_pow(C, 7)),
    ),
    "Delta": (
        _mono(Fraction(1, 1728), "E4", "E4", "E4"),
        _mono(Fraction(-1, 1728), "E6", "E6"),
    ),
}

# extra series the certifier multiplies by Δ² directly
DERIVED_NUMERATORS = ("Delta2", "Delta2_over_q")

FACTOR_NAMES = ("E2", "E4", "E6", "Th00_4", "Th01_4", "Th10_4")


def recipe(name: str) -> Recipe:
    try:
        return NUMERATOR_RECIPES[name]
    except KeyError:
        raise UnknownFormError(f"no numerator recipe for '{name}'") from None


def evaluate_recipe(terms: Recipe, factors: Mapping[str, FormalSeries]) -> FormalSeries:
    """Σ c·Π factors, sharing partial products between monomials."""
    cache: Dict[Tuple[str, ...], FormalSeries] = {}

    def product(names: Tuple[str, ...]) -> FormalSeries:
        if names in cache:
            return cache[names]
        if len(names) == 1:
            result = factors[names[0]]
        else:
            result = series_mul(product(names[:-1]), factors[names[-1]])
        cache[names] = result
        return result

    total = None
    for coeff, names in terms:
        part = series_scale(product(tuple(sorted(names))), coeff)
        total = part if total is None else series_add(total, part)
    return total


def cleared_numerators(
    factors: Mapping[str, FormalSeries], names: Sequence[str] = ("phi", "Phi1", "Phi2", "psiI", "psiS")
) -> Dict[str, FormalSeries]:
    """
    Numerators N with form·Δ² = N, computed without division.

    `factors` maps FACTOR_NAMES to series at a common order. Delta2 and
    Delta2_over_q (q^{-1}Δ²) are available by name as well.
    """
    out: Dict[str, FormalSeries] = {}
    delta2 = None
    for name in names:
        if name in DERIVED_NUMERATORS:
            if delta2 is None:
                d = evaluate_recipe(recipe("Delta"), factors)
                delta2 = series_mul(d, d)
            out[name] = delta2 if name == "Delta2" else series_shift(delta2, HalfExp(-2))
        else:
            out[name] = evaluate_recipe(recipe(name), factors)
    return out
