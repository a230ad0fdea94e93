"""
Level-one Eisenstein series and the discriminant.
"""
from fractions import Fraction
from typing import Dict, List

from app.errors import UnsupportedWeightError
from app.series import FormalSeries, HalfExp, series_mul, series_normalize, series_sub

# 2/ζ(1-k) for the three weights that occur
EISENSTEIN_CONSTANTS: Dict[int, int] = {2: -24, 4: 240, 6: -504}


def divisor_sums(power: int, count: int) -> List[int]:
    """σ_power(n) for n = 0..count-1 (σ(0) reported as 0)."""
    sums = [0] * count
    for d in range(1, count):
        dp = d ** power
        for multiple in range(d, count, d):
            sums[multiple] += dp
    return sums


def _integer_terms_below(order: HalfExp) -> int:
    """Number of integer exponents n ≥ 0 with n < order."""
    return (order.twice_value + 1) // 2


def eisenstein(k: int, order: HalfExp) -> FormalSeries:
    """E_k = 1 + (2/ζ(1-k))·Σ σ_{k-1}(n) q^n, exact below `order`."""
    if k not in EISENSTEIN_CONSTANTS:
        raise UnsupportedWeightError(f"Eisenstein series of weight {k} not supported")
    if order.twice_value <= 0:
        raise ValueError(f"order must be positive, got {order}")

    count = _integer_terms_below(order)
    const = EISENSTEIN_CONSTANTS[k]
    sigma = divisor_sums(k - 1, count)
    terms = {0: 1}
    for n in range(1, count):
        terms[2 * n] = const * sigma[n]
    return FormalSeries(terms, HalfExp(0), order)


def delta(order: HalfExp) -> FormalSeries:
    """Δ = (E4³ − E6²)/1728, min_exp raised to q¹."""
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    diff = series_sub(series_mul(series_mul(e4, e4), e4), series_mul(e6, e6))
    return series_normalize(diff * Fraction(1, 1728))


def delta_product(order: HalfExp) -> FormalSeries:
    """Δ = q·∏(1 − qⁿ)²⁴ from the product, independent of the Eisenstein series."""
    if order.twice_value <= 2:
        raise ValueError(f"order must exceed q^1, got {order}")
    count = _integer_terms_below(order)
    # coefficients of ∏(1 − qⁿ)²⁴ at q^0..q^{count-2}
    width = count - 1
    prod = [1] + [0] * (width - 1)
    for n in range(1, width):
        for _ in range(24):
            for m in range(width - 1, n - 1, -1):
                prod[m] -= prod[m - n]
    return FormalSeries({2 * (m + 1): c for m, c in enumerate(prod)}, HalfExp(2), order)
