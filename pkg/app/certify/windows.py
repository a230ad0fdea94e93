"""
Refinement of the t-range [1, ∞) into windows with rational u-enclosures.
"""
from fractions import Fraction
from math import ceil, floor
from typing import Tuple

from mpmath import iv
from mpmath.libmp import to_rational

from app.certify.reduction import TWindow

# enclosure endpoints are rounded outward onto this grid
ENCLOSURE_DENOMINATOR = 10 ** 30
ENCLOSURE_PREC = 192


def _round_down(x: Fraction) -> Fraction:
    return Fraction(floor(x * ENCLOSURE_DENOMINATOR), ENCLOSURE_DENOMINATOR)


def _round_up(x: Fraction) -> Fraction:
    return Fraction(ceil(x * ENCLOSURE_DENOMINATOR), ENCLOSURE_DENOMINATOR)


def u_enclosure(t: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational [lo, hi] containing e^{-πt}, from interval arithmetic."""
    t = Fraction(t)
    saved = iv.prec
    iv.prec = ENCLOSURE_PREC
    try:
        x = iv.exp(-iv.pi * iv.mpf(t.numerator) / t.denominator)
        lo_raw, hi_raw = x._mpi_
    finally:
        iv.prec = saved
    lo = Fraction(*to_rational(lo_raw))
    hi = Fraction(*to_rational(hi_raw))
    return _round_down(lo), _round_up(hi)


def bounded_window(t_lo: Fraction, t_hi: Fraction, depth: int) -> TWindow:
    u_lo, _ = u_enclosure(t_hi)
    _, u_hi = u_enclosure(t_lo)
    return TWindow(Fraction(t_lo), Fraction(t_hi), u_lo, u_hi, depth=depth)


def tail_window(t_lo: Fraction, depth: int) -> TWindow:
    """[t_lo, ∞) with u ∈ (0, e^{-π·t_lo}] and t ≤ K/u, K ≥ t_lo·e^{-π·t_lo}."""
    _, u_hi = u_enclosure(t_lo)
    return TWindow(Fraction(t_lo), None, Fraction(0), u_hi, K=Fraction(t_lo) * u_hi, depth=depth)


def split_window(window: TWindow) -> Tuple[TWindow, TWindow]:
    """[T, ∞) → [T, 2T] ∪ [2T, ∞); [a, b] → halves."""
    depth = window.depth + 1
    if window.unbounded:
        t = window.t_lo
        return bounded_window(t, 2 * t, depth), tail_window(2 * t, depth)
    mid = (window.t_lo + window.t_hi) / 2
    return bounded_window(window.t_lo, mid, depth), bounded_window(mid, window.t_hi, depth)
