"""
Branch plans for the three inequalities and the f̂ gap, and the driver
that certifies each branch with Sturm's theorem.

Every branch is an expression Σ scalar·t^j·π^p·N(q) with N a Δ²-cleared
numerator, to be shown negative or positive for t ≥ 1 (the t ≤ 1 halves
are rewritten through z ↦ -1/z, so t ≥ 1 throughout).
"""
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath

from app.bounds import bound_regrid, numerator_bounds, tail_bound
from app.certify.ratpoly import RatPoly
from app.certify.reduction import (
    Direction,
    Replacement,
    Sense,
    TPiPoly,
    TWindow,
    initial_window,
    pi_bounds,
    pi_power_bounds,
    reduce_branch,
)
from app.certify.sturm import count_real_roots
from app.certify.windows import split_window
from app.errors import CertificationError, LeechError, MissingTailBoundError
from app.series import FormalSeries, HalfExp, series_add, series_scale, series_truncate
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

STATUS_OK = "ok"
STATUS_ROOTS = "roots_found"
STATUS_WRONG_SIGN = "wrong_sign"
STATUS_TAIL = "tail_failed"
STATUS_PRESCAN = "prescan_failed"
STATUS_ERROR = "error"

PRESCAN_POINTS = 64


@dataclass(frozen=True)
class BranchComponent:
    t_degree: int
    pi_power: int
    scalar: Fraction
    numerator: str


@dataclass(frozen=True)
class BranchPlan:
    lemma: str
    name: str
    sense: Sense
    components: Tuple[BranchComponent, ...]
    description: str = ""

    @property
    def depends_on_t(self) -> bool:
        return any(c.t_degree for c in self.components)

    @property
    def numerator_names(self) -> Tuple[str, ...]:
        return tuple(sorted({c.numerator for c in self.components}))


def _c(j: int, p: int, scalar, name: str) -> BranchComponent:
    return BranchComponent(j, p, Fraction(scalar), name)


# On t ≥ 1 after z ↦ -1/z: t^10·φ(i/t) = t²φ(it) + (t/π)Φ1(it) - Φ2(it)/π²
_SWAPPED_PHI = (_c(2, 0, -1, "phi"), _c(1, -1, -1, "Phi1"), _c(0, -2, 1, "Phi2"))

LEMMA_PLANS: Dict[str, Tuple[BranchPlan, ...]] = {
    "A1": (
        BranchPlan("A1", "t_ge_1", Sense.NEGATIVE, (_c(0, 0, 1, "phi"),), "phi(it) < 0"),
        BranchPlan("A1", "t_le_1", Sense.POSITIVE, _SWAPPED_PHI, "-t^2 phi(it) + it phi1(it) + phi2(it) > 0"),
    ),
    "A2": (
        BranchPlan(
            "A2", "t_ge_1", Sense.POSITIVE,
            (_c(0, 0, 1, "phi"), _c(0, -2, -432, "psiS")),
            "phi(it) - (432/pi^2) psiS(it) > 0",
        ),
        BranchPlan(
            "A2", "t_le_1", Sense.NEGATIVE,
            _SWAPPED_PHI + (_c(0, -2, -432, "psiI"),),
            "-t^2 phi(it) + it phi1(it) + phi2(it) - (432/pi^2) psiI(it) < 0",
        ),
    ),
    "A3": (
        BranchPlan(
            "A3", "t_ge_1", Sense.POSITIVE,
            (
                _c(2, 1, Fraction(1, 28304640), "phi"),
                _c(1, 0, Fraction(1, 28304640), "Phi1"),
                _c(1, 0, Fraction(-1, 39), "Delta2_over_q"),
                _c(0, -1, Fraction(-1, 28304640), "Phi2"),
                _c(0, -1, Fraction(1, 65520), "psiI"),
                _c(0, -1, Fraction(10, 117), "Delta2_over_q"),
            ),
            "B(t) - (1/39) t e^{2 pi t} + (10/(117 pi)) e^{2 pi t} > 0",
        ),
    ),
}


def lemma_plan(lemma_id: str) -> Tuple[BranchPlan, ...]:
    try:
        return LEMMA_PLANS[lemma_id]
    except KeyError:
        raise LeechError(f"unknown lemma '{lemma_id}'; expected one of {', '.join(LEMMA_PLANS)}") from None


@dataclass(frozen=True)
class BranchResult:
    lemma: str
    branch: str
    window: Optional[Dict[str, Any]]
    interval: Tuple[str, str]
    degree: int
    poly_hash: str
    expected_sign: str
    sample_sign: Optional[str]
    root_count: Optional[int]
    tail_constant: str
    tail_ok: bool
    stripped_power: int = 0
    cleared_power: int = 0
    endpoint_perturbations: Tuple[Dict[str, str], ...] = ()
    replacements: Tuple[Replacement, ...] = ()
    wall_time: float = 0.0
    status: str = STATUS_OK
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def to_json(self) -> Dict[str, Any]:
        return {
            "lemma": self.lemma,
            "branch": self.branch,
            "window": self.window,
            "interval": list(self.interval),
            "degree": self.degree,
            "poly_hash": self.poly_hash,
            "expected_sign": self.expected_sign,
            "sample_sign": self.sample_sign,
            "root_count": self.root_count,
            "tail_constant": self.tail_constant,
            "tail_ok": self.tail_ok,
            "stripped_power": self.stripped_power,
            "cleared_power": self.cleared_power,
            "endpoint_perturbations": list(self.endpoint_perturbations),
            "replacements": [r.to_json() for r in self.replacements],
            "wall_time": round(self.wall_time, 3),
            "status": self.status,
            "message": self.message,
        }


@dataclass(frozen=True)
class CertResult:
    lemma_id: str
    branches: Tuple[BranchResult, ...]
    wall_time: float
    order: int
    tail_applied: str
    description: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.branches) and all(b.ok for b in self.branches)

    @property
    def status(self) -> str:
        return STATUS_OK if self.ok else "failed"

    def failures(self) -> List[BranchResult]:
        return [b for b in self.branches if not b.ok]

    def raise_for_status(self) -> "CertResult":
        if not self.ok:
            raise CertificationError(
                f"{self.lemma_id} failed on {len(self.failures())} of {len(self.branches)} branches",
                [b.to_json() for b in self.failures()],
            )
        return self

    def to_json(self) -> Dict[str, Any]:
        return {
            "lemma_id": self.lemma_id,
            "description": self.description,
            "order": self.order,
            "tail_applied": self.tail_applied,
            "status": self.status,
            "wall_time": round(self.wall_time, 3),
            "branches": [b.to_json() for b in self.branches],
        }


def _sign_str(s: int) -> str:
    return "+" if s > 0 else "-" if s < 0 else "0"


def tail_epsilon() -> Fraction:
    return Fraction(1, 10 ** settings.TAIL_BUDGET_EXPONENT)


def build_expression(plan: BranchPlan, numerators: Mapping[str, FormalSeries], order: int) -> TPiPoly:
    """Σ scalar·t^j·π^p·N truncated below q^order (u^{2·order})."""
    cut = HalfExp.from_q(order)
    terms: Dict[Tuple[int, int], FormalSeries] = {}
    for comp in plan.components:
        if comp.numerator not in numerators:
            raise MissingTailBoundError(f"numerator '{comp.numerator}' not supplied for {plan.lemma}/{plan.name}")
        series = numerators[comp.numerator]
        if series.trunc_order < cut:
            raise LeechError(
                f"numerator '{comp.numerator}' known only below q^{series.trunc_order}, need q^{order}"
            )
        part = series_scale(series_truncate(series, cut), comp.scalar)
        key = (comp.t_degree, comp.pi_power)
        terms[key] = part if key not in terms else series_add(terms[key], part)
    return TPiPoly(terms)


def branch_tail(plan: BranchPlan, window: TWindow, order: int) -> Fraction:
    """
    Certified multiple of u^12 bounding everything dropped at q^order.

    Each component contributes |scalar|·max π^p·(t-factor)·tail, where on
    the unbounded window t^j ≤ K^j·u^{-j} moves the normalization to u^{12+j}.
    """
    bounds = numerator_bounds()
    q0 = Fraction(1, settings.T_BOUND_DENOMINATOR)
    n0 = 2 * order
    total = Fraction(0)
    for comp in plan.components:
        if comp.numerator not in bounds:
            raise MissingTailBoundError(f"no coefficient bound for '{comp.numerator}'")
        b = bound_regrid(bounds[comp.numerator])
        shift = comp.t_degree if window.unbounded else 0
        tb = tail_bound(b, n0, q0, settings.TAIL_NORMALIZE_HALF_STEPS + shift)
        pi_max = max(pi_power_bounds(comp.pi_power))
        total += abs(comp.scalar) * pi_max * window.t_max_factor(comp.t_degree) * tb.value
    return total


def _prescan_ok(poly: RatPoly, lo: Fraction, hi: Fraction, expected: int) -> bool:
    """Floating sample of the sign on the open interval."""
    with mpmath.workdps(50):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(poly.coeffs)]
        a, b = mpmath.mpf(lo.numerator) / lo.denominator, mpmath.mpf(hi.numerator) / hi.denominator
        for i in range(1, PRESCAN_POINTS):
            x = a + (b - a) * i / PRESCAN_POINTS
            v = mpmath.polyval(coeffs, x)
            if v * expected < 0:
                return False
    return True


def _fix_endpoints(
    poly: RatPoly, window: TWindow, lo: Fraction, hi: Fraction
) -> Tuple[Fraction, Fraction, List[Dict[str, str]]]:
    """
    Move an endpoint that is a root. The outer bound 1/23 is strictly above
    e^{-π}, so it moves inward; enclosure endpoints move outward.
    """
    eps = Fraction(1, 10 ** settings.ENDPOINT_EPSILON_EXPONENT)
    top = Fraction(1, settings.T_BOUND_DENOMINATOR)
    perturbations: List[Dict[str, str]] = []
    if lo > 0 and poly.sign_at(lo) == 0:
        new_lo = lo - eps
        perturbations.append({"endpoint": "lo", "from": str(lo), "to": str(new_lo)})
        lo = new_lo
    if poly.sign_at(hi) == 0:
        new_hi = hi - eps if hi == top else hi + eps
        perturbations.append({"endpoint": "hi", "from": str(hi), "to": str(new_hi)})
        hi = new_hi
    return lo, hi, perturbations


def certify_window(
    plan: BranchPlan,
    expr: TPiPoly,
    window: TWindow,
    order: int,
    prescan: bool = True,
) -> BranchResult:
    start = time.perf_counter()
    expected = plan.sense.sign
    eps = tail_epsilon()
    tail = branch_tail(plan, window, order)
    tail_ok = tail <= eps
    base = dict(
        lemma=plan.lemma,
        branch=plan.name,
        window=window.to_json(),
        expected_sign=_sign_str(expected),
        tail_constant=f"{float(tail):.6e}",
        tail_ok=tail_ok,
    )
    if not tail_ok:
        logger.warning(
            "Truncation tail exceeds budget",
            extra={"extra": {"lemma": plan.lemma, "branch": plan.name, "tail": f"{float(tail):.3e}"}},
        )
        return BranchResult(
            interval=(str(window.u_lo), str(window.u_hi)), degree=-1, poly_hash="", sample_sign=None,
            root_count=None, wall_time=time.perf_counter() - start, status=STATUS_TAIL,
            message=f"tail {float(tail):.3e} exceeds 1e-{settings.TAIL_BUDGET_EXPONENT}", **base,
        )

    reduced = reduce_branch(expr, window, plan.sense, tail=eps)
    poly, stripped = reduced.poly.strip_low_powers()
    lo, hi = window.u_lo, window.u_hi
    common = dict(
        degree=poly.degree,
        poly_hash=poly.hash(),
        stripped_power=stripped,
        cleared_power=reduced.cleared_power,
        replacements=tuple(reduced.replacements),
        **base,
    )

    if poly.is_zero():
        return BranchResult(
            interval=(str(lo), str(hi)), sample_sign="0", root_count=None,
            wall_time=time.perf_counter() - start, status=STATUS_ERROR,
            message="reduced polynomial vanishes identically", **common,
        )

    if prescan and not _prescan_ok(poly, lo, hi, expected):
        return BranchResult(
            interval=(str(lo), str(hi)), sample_sign=None, root_count=None,
            wall_time=time.perf_counter() - start, status=STATUS_PRESCAN,
            message="floating prescan found the wrong sign", **common,
        )

    lo, hi, perturbations = _fix_endpoints(poly, window, lo, hi)
    try:
        roots = count_real_roots(poly, lo, hi)
    except LeechError as e:
        return BranchResult(
            interval=(str(lo), str(hi)), sample_sign=None, root_count=None,
            endpoint_perturbations=tuple(perturbations), wall_time=time.perf_counter() - start,
            status=STATUS_ERROR, message=str(e), **common,
        )
    sample = poly.sign_at((lo + hi) / 2)

    if roots:
        status = STATUS_ROOTS
    elif sample != expected:
        status = STATUS_WRONG_SIGN
    else:
        status = STATUS_OK
    elapsed = time.perf_counter() - start
    logger.info(
        "Certified window" if status == STATUS_OK else "Window not certified",
        extra={"extra": {
            "lemma": plan.lemma, "branch": plan.name, "window": window.label,
            "degree": poly.degree, "roots": roots, "elapsed": round(elapsed, 3),
        }},
    )
    return BranchResult(
        interval=(str(lo), str(hi)), sample_sign=_sign_str(sample), root_count=roots,
        endpoint_perturbations=tuple(perturbations), wall_time=elapsed, status=status, **common,
    )


def certify_branch(
    plan: BranchPlan,
    numerators: Mapping[str, FormalSeries],
    order: int,
    max_depth: Optional[int] = None,
) -> List[BranchResult]:
    """
    Certify one branch, bisecting the t-range while a window fails and
    splitting can still help. Returns one result per final window.
    """
    max_depth = settings.MAX_WINDOW_DEPTH if max_depth is None else max_depth
    expr = build_expression(plan, numerators, order)
    results: List[BranchResult] = []
    pending: List[TWindow] = [initial_window()]
    while pending:
        window = pending.pop(0)
        result = certify_window(plan, expr, window, order)
        retry = result.status in (STATUS_PRESCAN, STATUS_ROOTS, STATUS_WRONG_SIGN)
        if retry and plan.depends_on_t and window.depth < max_depth:
            logger.info(
                "Refining window",
                extra={"extra": {"lemma": plan.lemma, "branch": plan.name, "window": window.label, "reason": result.status}},
            )
            pending[0:0] = list(split_window(window))
            continue
        if result.status == STATUS_PRESCAN:
            result = certify_window(plan, expr, window, order, prescan=False)
        results.append(result)
    return results


def certify_lemma(
    lemma_id: str,
    order: int,
    numerators: Mapping[str, FormalSeries],
) -> CertResult:
    """Run every branch of the lemma; failures are reported in the result."""
    start = time.perf_counter()
    plans = lemma_plan(lemma_id)
    branches: List[BranchResult] = []
    for plan in plans:
        branches.extend(certify_branch(plan, numerators, order))
    result = CertResult(
        lemma_id=lemma_id,
        branches=tuple(branches),
        wall_time=time.perf_counter() - start,
        order=order,
        tail_applied=f"1e-{settings.TAIL_BUDGET_EXPONENT}*u^{settings.TAIL_NORMALIZE_HALF_STEPS}",
        description="; ".join(p.description for p in plans),
    )
    logger.info(
        "Lemma certification finished",
        extra={"extra": {"lemma": lemma_id, "status": result.status, "windows": len(branches), "elapsed": round(result.wall_time, 3)}},
    )
    return result


def fhat_gap_polynomial() -> RatPoly:
    """
    Lower bound of (10 - 3π)(2 - s) + 3 = 23 - 10s + π(3s - 6) on (0, 2).

    π multiplies 3s - 6 < 0 there, so its upper bound gives the lower bound.
    """
    _, pi_hi = pi_bounds()
    return RatPoly((23 - 6 * pi_hi, 3 * pi_hi - 10))


def certify_fhat_gap() -> CertResult:
    start = time.perf_counter()
    poly = fhat_gap_polynomial()
    lo, hi = Fraction(0), Fraction(2)
    roots = count_real_roots(poly, lo, hi)
    sample = poly.sign_at(Fraction(1))
    status = STATUS_OK if roots == 0 and sample > 0 else (STATUS_ROOTS if roots else STATUS_WRONG_SIGN)
    _, pi_hi = pi_bounds()
    branch = BranchResult(
        lemma="fhat_gap",
        branch="s_in_0_2",
        window=None,
        interval=(str(lo), str(hi)),
        degree=poly.degree,
        poly_hash=poly.hash(),
        expected_sign="+",
        sample_sign=_sign_str(sample),
        root_count=roots,
        tail_constant="0",
        tail_ok=True,
        replacements=(Replacement("pi", 1, Direction.UPPER, str(pi_hi), 2),),
        wall_time=time.perf_counter() - start,
        status=status,
    )
    return CertResult(
        lemma_id="fhat_gap",
        branches=(branch,),
        wall_time=time.perf_counter() - start,
        order=0,
        tail_applied="0",
        description="(10 - 3 pi)(2 - s) + 3 > 0 for 0 < s < 2",
    )


def required_numerators(lemma_ids: Sequence[str]) -> Tuple[str, ...]:
    names = set()
    for lemma_id in lemma_ids:
        for plan in lemma_plan(lemma_id):
            names.update(plan.numerator_names)
    return tuple(sorted(names))
