"""
Exact consistency checks between the catalog entries.

A failed identity is reported, not raised: the report carries the lowest
exponent at which the two sides disagree.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from app.forms.catalog import FormCatalog
from app.forms.eisenstein import delta_product
from app.forms.numerators import evaluate_recipe, recipe
from app.series import (
    FormalSeries,
    HalfExp,
    first_difference,
    flip_half_signs,
    series_add,
    series_mul,
    series_truncate,
)
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    description: str
    passed: bool
    first_offending: Optional[HalfExp] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "first_offending": None if self.first_offending is None else str(self.first_offending),
        }


@dataclass(frozen=True)
class IdentityReport:
    results: Dict[str, IdentityResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def __getitem__(self, name: str) -> IdentityResult:
        return self.results[name]

    def failures(self) -> Dict[str, IdentityResult]:
        return {name: r for name, r in self.results.items() if not r.passed}

    def to_json(self) -> Dict[str, Any]:
        return {"passed": self.passed, "identities": [r.to_json() for r in self.results.values()]}


def _cleared(catalog: FormCatalog, form: str) -> Tuple[FormalSeries, FormalSeries]:
    """form·Δ² from the catalog entries versus its numerator recipe."""
    d = catalog.body("Delta")
    lhs = series_mul(series_mul(catalog.body(form), d), d)
    rhs = evaluate_recipe(recipe(form), catalog.factors())
    return lhs, rhs


def _identities(catalog: FormCatalog) -> Dict[str, Tuple[str, Callable[[], Tuple[FormalSeries, FormalSeries]]]]:
    body = catalog.body
    return {
        "delta": (
            "Delta = q * prod (1 - q^n)^24",
            lambda: (body("Delta"), delta_product(catalog.order)),
        ),
        "delta_eisenstein": (
            "(E4^3 - E6^2)/1728 = q * prod (1 - q^n)^24",
            lambda: (evaluate_recipe(recipe("Delta"), catalog.factors()), delta_product(catalog.order)),
        ),
        "jacobi": (
            "Th01^4 + Th10^4 = Th00^4",
            lambda: (series_add(body("Th01_4"), body("Th10_4")), body("Th00_4")),
        ),
        "psi_sum": (
            "psiS + psiT = psiI",
            lambda: (series_add(body("psiS"), body("psiT")), body("psiI")),
        ),
        "phi_numerator": ("phi * Delta^2 = 25E4^4 - 49E6^2E4 + 48E6E4^2E2 - 49E4^3E2^2 + 25E6^2E2^2", lambda: _cleared(catalog, "phi")),
        "psi_flip": (
            "psiT = psiI with odd half-power signs negated",
            lambda: (body("psiT"), flip_half_signs(body("psiI"))),
        ),
        "Phi1_numerator": ("Phi1 * Delta^2 = -288E6E4^2 + 588E2E4^3 - 300E2E6^2", lambda: _cleared(catalog, "Phi1")),
        "Phi2_numerator": ("Phi2 * Delta^2 = 1764E4^3 - 900E6^2", lambda: _cleared(catalog, "Phi2")),
        "psiI_numerator": ("psiI * Delta^2 = 7A^5B^2 + 7A^6B + 2A^7", lambda: _cleared(catalog, "psiI")),
        "psiS_numerator": ("psiS * Delta^2 = -(7B^5A^2 + 7B^6A + 2B^7)", lambda: _cleared(catalog, "psiS")),
    }


def verify_identities(catalog: FormCatalog) -> IdentityReport:
    """
    Check every identity exactly through the catalog's truncation order.
    """
    results: Dict[str, IdentityResult] = {}
    for name, (description, sides) in _identities(catalog).items():
        lhs, rhs = sides()
        lhs = series_truncate(lhs, catalog.order)
        rhs = series_truncate(rhs, catalog.order)
        offending = first_difference(lhs, rhs)
        results[name] = IdentityResult(name, description, offending is None, offending)
        if offending is not None:
            logger.warning(
                "Identity check failed",
                extra={"extra": {"identity": name, "first_offending": str(offending)}},
            )
    report = IdentityReport(results)
    logger.info(
        "Verified catalog identities",
        extra={"extra": {"passed": report.passed, "checked": len(results)}},
    )
    return report
