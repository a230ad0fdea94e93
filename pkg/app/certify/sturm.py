"""
Sturm sequences and exact real-root counting.

The chain comes from sympy over QQ; sign variations are read off with
integer arithmetic so no floating evaluation enters the count.
"""
from fractions import Fraction
from typing import List, Sequence

import sympy

from app.certify.ratpoly import RatPoly, homogeneous_sign
from app.errors import EndpointRootError


def sturm_chain(p: RatPoly) -> List[RatPoly]:
    """
    Canonical Sturm sequence p, p', -rem, ... ending at a nonzero constant.

    A non-squarefree p is first replaced by its squarefree part, which has
    the same distinct real roots.
    """
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    return [RatPoly(q) for q in sympy.sturm(p.poly.sqf_part())]


def sign_variations(chain: Sequence[RatPoly], x: Fraction) -> int:
    x = Fraction(x)
    signs = [homogeneous_sign(poly.integer_coefficients(), x) for poly in chain]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RatPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if p.sign_at(lo) == 0:
        raise EndpointRootError(lo)
    if p.sign_at(hi) == 0:
        raise EndpointRootError(hi)
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def bisection_root_count(p: RatPoly, lo: Fraction, hi: Fraction, samples: int = 10_000) -> int:
    """
    Brute-force oracle: sign changes of the squarefree part over a uniform
    rational grid, counting exact zeros at interior grid points as roots.

    Only reliable when roots are separated by more than the grid spacing.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    q = p.squarefree().integer_coefficients()
    step = (hi - lo) / samples
    roots = 0
    prev = None
    for i in range(samples + 1):
        s = homogeneous_sign(q, lo + step * i)
        if s == 0:
            if 0 < i < samples:
                roots += 1
            prev = None
            continue
        if prev is not None and s != prev:
            roots += 1
        prev = s
    return roots
