"""
Certified bounds on the dropped tail of a truncated series.

For a bound C(n+1)^k the tail Σ_{e≥n0} C(e-s+1)^k·q0^{e-normalize_at} is
summed exactly for a fixed number of terms; the rest is dominated by a
geometric series whose ratio ((M-s+2)/(M-s+1))^k·q0 decreases with M.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from app.bounds.power_bound import PowerBound, numerator_bound
from app.errors import DivergentTailError
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

# hard stop for the search of a convergent majorant
MAX_MAJORANT_START = 100_000


@dataclass(frozen=True)
class TailBound:
    value: Fraction
    normalize_at: int
    n0: int
    q0: Fraction
    partial_terms: int
    ratio: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {
            "value": f"{float(self.value):.6e}",
            "value_exact_log10": _log10_upper(self.value),
            "normalize_at": self.normalize_at,
            "n0": self.n0,
            "q0": str(self.q0),
            "partial_terms": self.partial_terms,
            "ratio": f"{float(self.ratio):.6e}",
        }


def _log10_upper(x: Fraction) -> Optional[int]:
    """Smallest integer m with x ≤ 10^m (None for zero)."""
    if x <= 0:
        return None
    m = len(str(x.numerator)) - len(str(x.denominator)) + 1
    while Fraction(10) ** (m - 1) >= x:
        m -= 1
    while Fraction(10) ** m < x:
        m += 1
    return m


def tail_bound(
    b: PowerBound,
    n0: int,
    q0: Fraction,
    normalize_at: int,
    partial_terms: Optional[int] = None,
) -> TailBound:
    """
    Upper bound on Σ_{e≥n0} C·(e-s+1)^k·q0^{e-normalize_at}.

    e counts steps of b's grid and s is b's shift in the same units.
    """
    q0 = Fraction(q0)
    if q0 <= 0:
        raise ValueError(f"q0 must be positive, got {q0}")
    if q0 >= 1:
        raise DivergentTailError(f"q0 = {q0} gives no geometric decay")
    if n0 <= normalize_at:
        raise ValueError(f"n0 = {n0} must exceed normalize_at = {normalize_at}")
    s = b.shift_steps
    if n0 < s:
        raise ValueError(f"n0 = {n0} lies below the bound's shift {s}")

    length = partial_terms if partial_terms is not None else settings.TAIL_PARTIAL_TERMS
    C, k = b.C, b.k

    def term(e: int) -> Fraction:
        return C * (e - s + 1) ** k * q0 ** (e - normalize_at)

    def ratio(m: int) -> Fraction:
        return Fraction(m - s + 2, m - s + 1) ** k * q0

    partial = Fraction(0)
    e = n0
    m = n0 + length
    while True:
        rho = ratio(m)
        if rho < 1:
            break
        if m - n0 > MAX_MAJORANT_START:
            raise DivergentTailError(
                f"majorant ratio still {float(rho):.3f} after {m - n0} terms"
            )
        m += length
    # q0^(e - normalize_at) stepped incrementally
    power = q0 ** (e - normalize_at)
    while e < m:
        partial += C * (e - s + 1) ** k * power
        power *= q0
        e += 1

    value = partial + term(m) / (1 - rho)
    logger.debug(
        "Tail bound",
        extra={"extra": {"n0": n0, "q0": str(q0), "normalize_at": normalize_at, "value": f"{float(value):.3e}"}},
    )
    return TailBound(value, normalize_at, n0, q0, m - n0, rho)


def flagship_tail() -> TailBound:
    """The φΔ² tail beyond q^50 at q ≤ 1/535, normalized at q^6."""
    return tail_bound(numerator_bound("phi"), 50, Fraction(1, 535), 6)
