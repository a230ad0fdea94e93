"""
The named forms φ, φ1, φ2, ψ_I, ψ_S, ψ_T and their building blocks.
"""
import hashlib
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from app.errors import UnknownFormError
from app.forms.eisenstein import eisenstein
from app.forms.numerators import FACTOR_NAMES, cleared_numerators, evaluate_recipe, recipe
from app.forms.pi_series import PiSeries
from app.forms.theta import theta4
from app.series import (
    FormalSeries,
    HalfExp,
    series_invert,
    series_mul,
    series_normalize,
    series_truncate,
)
from app.settings import settings
from app.utils.cache import catalog_cache
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

FORM_NAMES = (
    "E2", "E4", "E6", "Delta",
    "Th00_4", "Th01_4", "Th10_4",
    "phi", "Phi1", "Phi2",
    "psiI", "psiS", "psiT",
)

# (pi_power, i_power) of each named form
FORM_FACTORS: Dict[str, Tuple[int, int]] = {name: (0, 0) for name in FORM_NAMES}
FORM_FACTORS["Phi1"] = (-1, 1)
FORM_FACTORS["Phi2"] = (-2, 0)

_ALIASES = {name.lower(): name for name in FORM_NAMES}
_ALIASES.update({"phi1": "Phi1", "phi2": "Phi2", "theta00": "Th00_4", "theta01": "Th01_4", "theta10": "Th10_4"})

# Δ² division loses 6 half-steps of precision; compute with margin, then cut
WORKING_MARGIN = HalfExp(8)


def resolve_form_name(name: str) -> str:
    if name in FORM_FACTORS:
        return name
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise UnknownFormError(f"unknown form '{name}'; known forms: {', '.join(FORM_NAMES)}") from None


def catalog_order(q_order: int) -> HalfExp:
    """Truncation order keeping every coefficient through q^{q_order}."""
    return HalfExp(2 * q_order + 1)


def _factor_series(order: HalfExp) -> Dict[str, FormalSeries]:
    return {
        "E2": eisenstein(2, order),
        "E4": eisenstein(4, order),
        "E6": eisenstein(6, order),
        "Th00_4": theta4("00", order),
        "Th01_4": theta4("01", order),
        "Th10_4": theta4("10", order),
    }


def _inverse_delta_squared(factors: Mapping[str, FormalSeries]) -> Tuple[FormalSeries, FormalSeries]:
    d = series_normalize(evaluate_recipe(recipe("Delta"), factors))
    return d, series_invert(series_mul(d, d))


def _divide(names: Sequence[str], order: HalfExp) -> Dict[str, FormalSeries]:
    work = order + WORKING_MARGIN
    factors = _factor_series(work)
    _, inv = _inverse_delta_squared(factors)
    numerators = cleared_numerators(factors, names)
    return {
        name: series_normalize(series_truncate(series_mul(num, inv), order))
        for name, num in numerators.items()
    }


def phi_family(order: HalfExp) -> Dict[str, Any]:
    """{phi: FormalSeries, Phi1: PiSeries (i/π), Phi2: PiSeries (1/π²)}."""
    forms = _divide(("phi", "Phi1", "Phi2"), order)
    return {
        "phi": forms["phi"],
        "Phi1": PiSeries(forms["Phi1"], *FORM_FACTORS["Phi1"]),
        "Phi2": PiSeries(forms["Phi2"], *FORM_FACTORS["Phi2"]),
    }


def psi_family(order: HalfExp) -> Dict[str, FormalSeries]:
    return _divide(("psiI", "psiS", "psiT"), order)


@dataclass(frozen=True)
class FormCatalog:
    """Every named form truncated at one common order."""

    order: HalfExp
    entries: Mapping[str, PiSeries]

    def __getitem__(self, name: str) -> PiSeries:
        return self.entries[resolve_form_name(name)]

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def body(self, name: str) -> FormalSeries:
        return self[name].body

    @property
    def q_order(self) -> int:
        """Highest integer power of q whose coefficient is known."""
        return (self.order.twice_value - 1) // 2

    def factors(self) -> Dict[str, FormalSeries]:
        return {name: self.entries[name].body for name in FACTOR_NAMES}

    def numerators(self, names: Sequence[str]) -> Dict[str, FormalSeries]:
        """Δ²-cleared numerators recomputed from this catalog's factor entries."""
        return cleared_numerators(self.factors(), names)


def build_catalog(q_order: int) -> FormCatalog:
    """
    Build every named form with coefficients exact through q^{q_order}.
    """
    if q_order < 1:
        raise ValueError(f"catalog order must be at least 1, got {q_order}")
    start = time.perf_counter()
    order = catalog_order(q_order)
    work = order + WORKING_MARGIN

    factors = _factor_series(work)
    d, inv = _inverse_delta_squared(factors)
    numerators = cleared_numerators(factors, ("phi", "Phi1", "Phi2", "psiI", "psiS", "psiT"))

    bodies: Dict[str, FormalSeries] = {
        name: series_truncate(series, order) for name, series in factors.items()
    }
    bodies["Delta"] = series_truncate(d, order)
    for name, num in numerators.items():
        bodies[name] = series_normalize(series_truncate(series_mul(num, inv), order))

    entries = {name: PiSeries(bodies[name], *FORM_FACTORS[name]) for name in FORM_NAMES}
    catalog = FormCatalog(order=order, entries=entries)

    logger.info(
        "Built form catalog",
        extra={"extra": {"q_order": q_order, "elapsed": round(time.perf_counter() - start, 3)}},
    )
    return catalog


def catalog_to_json(catalog: FormCatalog) -> Dict[str, Any]:
    return {
        "order": catalog.order.twice_value,
        "forms": {name: catalog.entries[name].to_json() for name in FORM_NAMES if name in catalog.entries},
    }


def catalog_hash(catalog: FormCatalog) -> str:
    canonical = json.dumps(catalog_to_json(catalog), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def form_hashes(catalog: FormCatalog) -> Dict[str, str]:
    """Per-form SHA-256 identity hashes for the certificate report."""
    out = {}
    for name in FORM_NAMES:
        canonical = json.dumps(catalog.entries[name].to_json(), sort_keys=True, separators=(",", ":"))
        out[name] = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return out


def inject_fault(catalog: FormCatalog, name: str, twice_exp: int, delta: Fraction = Fraction(1)) -> FormCatalog:
    """Copy of the catalog with one coefficient of `name` shifted by `delta`."""
    name = resolve_form_name(name)
    entry = catalog.entries[name]
    body = entry.body
    if twice_exp >= body.trunc_order.twice_value:
        raise ValueError(f"exponent {HalfExp(twice_exp)} is at or above the truncation order of {name}")
    terms = dict(body.terms)
    terms[twice_exp] = terms.get(twice_exp, 0) + delta
    faulty = FormalSeries(terms, min(body.min_exp, HalfExp(twice_exp)), body.trunc_order)

    entries = dict(catalog.entries)
    entries[name] = entry.with_body(faulty)
    logger.warning(
        "Injected catalog fault",
        extra={"extra": {"form": name, "twice_exp": twice_exp, "delta": str(delta)}},
    )
    return FormCatalog(order=catalog.order, entries=entries)


def load_catalog(q_order: Optional[int] = None) -> FormCatalog:
    """Catalog at q_order (default TRUNCATION_ORDER), through the catalog cache."""
    q_order = settings.TRUNCATION_ORDER if q_order is None else q_order
    return catalog_cache.get_or_build("catalog", q_order, build_catalog)
