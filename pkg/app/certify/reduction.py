"""
Turn Σ t^j·π^p·(series in u = q^{1/2}) into a one-sided polynomial bound in u.

Every positive factor (a power of π or of t) is replaced by the end of its
enclosure that makes the term smaller when the expression must be shown
positive, and larger when it must be shown negative. The truncation tail
is then added as ±ε·u^12 against the desired sign.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Tuple

import mpmath

from app.certify.ratpoly import RatPoly
from app.errors import InconsistentGridError
from app.series import FormalSeries, HalfExp
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)


class Sense(str, Enum):
    NEGATIVE = "should_be_negative"
    POSITIVE = "should_be_positive"

    @property
    def sign(self) -> int:
        return -1 if self is Sense.NEGATIVE else 1


class Direction(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


def pi_bounds(digits: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """⌊10^d·π⌋/10^d and ⌈10^d·π⌉/10^d."""
    return _pi_bounds(settings.PI_SCALE_DIGITS if digits is None else digits)


@lru_cache(maxsize=None)
def _pi_bounds(d: int) -> Tuple[Fraction, Fraction]:
    with mpmath.workdps(d + 20):
        scaled = mpmath.pi * mpmath.mpf(10) ** d
        lo = int(mpmath.floor(scaled))
    return Fraction(lo, 10 ** d), Fraction(lo + 1, 10 ** d)


def pi_power_bounds(p: int, digits: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    lo, hi = pi_bounds(digits)
    if p >= 0:
        return lo ** p, hi ** p
    return hi ** p, lo ** p


@dataclass(frozen=True)
class TWindow:
    """
    A range of t together with a rational u-interval containing e^{-πt}.

    Bounded windows have t_hi set. The unbounded window [t_lo, ∞) uses
    t ≤ K/u, valid because t·e^{-πt} is decreasing for t ≥ 1/π.
    """

    t_lo: Fraction
    t_hi: Optional[Fraction]
    u_lo: Fraction
    u_hi: Fraction
    K: Optional[Fraction] = None
    depth: int = 0

    def __post_init__(self):
        if self.t_hi is None and self.K is None:
            raise ValueError("unbounded window needs the constant K in t ≤ K/u")
        if not self.u_lo < self.u_hi:
            raise ValueError(f"empty u-interval ({self.u_lo}, {self.u_hi})")

    @property
    def unbounded(self) -> bool:
        return self.t_hi is None

    def t_power_bounds(self, j: int) -> Tuple[Tuple[Fraction, int], Tuple[Fraction, int]]:
        """((factor, u-exponent) for the lower bound, same for the upper bound) of t^j."""
        lower = (self.t_lo ** j, 0)
        if self.unbounded:
            upper = (self.K ** j, -j)
        else:
            upper = (self.t_hi ** j, 0)
        return lower, upper

    def t_max_factor(self, j: int) -> Fraction:
        """Constant multiplying u^{-j} (unbounded) or 1 (bounded) in the bound t^j ≤ ..."""
        return self.K ** j if self.unbounded else self.t_hi ** j

    @property
    def label(self) -> str:
        hi = "inf" if self.unbounded else str(self.t_hi)
        return f"[{self.t_lo}, {hi}]"

    def to_json(self) -> Dict[str, Any]:
        return {
            "t_lo": str(self.t_lo),
            "t_hi": None if self.t_hi is None else str(self.t_hi),
            "K": None if self.K is None else str(self.K),
            "u_lo": str(self.u_lo),
            "u_hi": str(self.u_hi),
            "depth": self.depth,
        }


def initial_window() -> TWindow:
    """t ∈ [1, ∞) with t ≤ 1/(23u) on u ∈ (0, 1/23)."""
    bound = Fraction(1, settings.T_BOUND_DENOMINATOR)
    return TWindow(Fraction(1), None, Fraction(0), bound, K=bound)


@dataclass(frozen=True)
class TPiPoly:
    """Σ t^j·π^p·series_{j,p}; all series share one truncation order."""

    terms: Mapping[Tuple[int, int], FormalSeries]

    def __post_init__(self):
        orders = {s.trunc_order for s in self.terms.values()}
        if len(orders) > 1:
            raise InconsistentGridError(
                f"series in a TPiPoly must share a truncation order, got {sorted(str(o) for o in orders)}"
            )

    @property
    def trunc_order(self) -> Optional[HalfExp]:
        for s in self.terms.values():
            return s.trunc_order
        return None

    @property
    def max_t_degree(self) -> int:
        return max((j for j, _ in self.terms), default=0)


@dataclass(frozen=True)
class Replacement:
    factor: str
    power: int
    direction: Direction
    value: str
    count: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "factor": self.factor,
            "power": self.power,
            "direction": self.direction.value,
            "value": self.value,
            "count": self.count,
        }


@dataclass(frozen=True)
class ReducedBranch:
    poly: RatPoly
    cleared_power: int
    replacements: List[Replacement] = field(default_factory=list)


def reduce_branch(
    expr: TPiPoly,
    window: TWindow,
    sense: Sense,
    tail: Optional[Fraction] = None,
    tail_exponent: Optional[int] = None,
) -> ReducedBranch:
    """
    One-sided rational polynomial in u for expr on the window.

    `tail` (the ε of ε·u^{tail_exponent}) is added against the sense. Negative
    u powers created by t ≤ K/u are cleared by multiplying through by u^m,
    which preserves the sign since u > 0.
    """
    tail_exponent = settings.TAIL_NORMALIZE_HALF_STEPS if tail_exponent is None else tail_exponent
    out: Dict[int, Fraction] = defaultdict(Fraction)
    log: Dict[Tuple[str, int, Direction, str], int] = defaultdict(int)

    for (j, p), series in expr.terms.items():
        pi_lo, pi_hi = pi_power_bounds(p)
        t_lower, t_upper = window.t_power_bounds(j)
        for e, c in series.terms.items():
            use_max = (sense is Sense.NEGATIVE) == (c > 0)
            direction = Direction.UPPER if use_max else Direction.LOWER
            pi_factor = pi_hi if use_max else pi_lo
            t_factor, u_shift = t_upper if use_max else t_lower
            out[e + u_shift] += c * pi_factor * t_factor
            if p:
                log[("pi", p, direction, str(pi_factor))] += 1
            if j:
                value = f"{t_factor}/u^{j}" if u_shift else str(t_factor)
                log[("t", j, direction, value)] += 1

    if tail:
        out[tail_exponent] += -sense.sign * Fraction(tail)

    cleared = 0
    nonzero = {e: c for e, c in out.items() if c}
    if nonzero and min(nonzero) < 0:
        cleared = -min(nonzero)
    poly = RatPoly.from_exponents({e + cleared: c for e, c in nonzero.items()})

    replacements = [
        Replacement(factor, power, direction, value, count)
        for (factor, power, direction, value), count in sorted(log.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].value, kv[0][3]))
    ]
    logger.debug(
        "Reduced branch",
        extra={"extra": {"window": window.label, "degree": poly.degree, "cleared": cleared, "sense": sense.value}},
    )
    return ReducedBranch(poly, cleared, replacements)
