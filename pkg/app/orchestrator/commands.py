"""
The four subcommands: expand, certify, eval and values.

Each returns a process exit code: 0 on success, 1 when a certificate
fails. Bad input raises (ValueError, UnknownFormError) and is mapped to 2
by the caller.
"""
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO

import mpmath

from app.bounds import check_empirical, flagship_tail, numerator_bounds
from app.certify import certify_fhat_gap, certify_lemma, required_numerators
from app.errors import EvaluationError
from app.forms import (
    catalog_hash,
    form_hashes,
    inject_fault,
    load_catalog,
    resolve_form_name,
    verify_identities,
)
from app.magic import (
    density_bound,
    density_exact,
    density_row,
    eval_f,
    eval_magic,
    f_special_values,
    provenance_table,
    sample_row,
    special_values,
)
from app.magic.evaluate import grid_points
from app.magic.exppoly import MagicValue
from app.orchestrator.parallel import ParallelExecutor, WorkItem
from app.orchestrator.report import CertificateReport, RunConfig
from app.series import render, to_json_rows
from app.settings import settings
from app.utils.logging_config import log_timing, setup_logging
from app.utils.output import render_rows, write_output

logger = setup_logging(__name__)

LEMMAS = ("A1", "A2", "A3")
# Δ²/q sits one power of q lower than the other numerators
CERTIFY_MARGIN = 1
FLAGSHIP_LIMIT = Fraction(1, 10 ** 50)

EVAL_COLUMNS = {
    "a": ["r", "value", "radius", "rigor"],
    "b": ["r", "value", "radius", "rigor"],
    "f": ["r", "f", "f_radius", "rigor"],
    "fhat": ["r", "fhat", "fhat_radius", "rigor"],
}
GRID_COLUMNS = ["r", "f", "f_radius", "fhat", "fhat_radius", "rigor"]
VALUE_COLUMNS = ["name", "exact", "decimal", "provenance"]
# generic radii for the numeric rows of the values table
NUMERIC_RADII = ("1", "1.5", "2.5")


# --- expand -----------------------------------------------------------------

def _prefix(pi_power: int, i_power: int) -> str:
    return MagicValue(Fraction(1), pi_power=pi_power, i_power=i_power).render()


def cmd_expand(form: str, order: Optional[int] = None, config: Optional[RunConfig] = None, stream: TextIO = sys.stdout) -> int:
    """Exact expansion of one named form through q^order."""
    config = config or RunConfig()
    name = resolve_form_name(form)
    order = settings.TRUNCATION_ORDER if order is None else order
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")
    entry = load_catalog(order)[name]
    body = entry.body
    prefix = _prefix(entry.pi_power, entry.i_power)

    if config.format == "json":
        payload = dict(entry.to_json(), form=name, q_order=order)
        text = render_rows([payload], "json")
    elif config.format == "csv":
        rows = [
            {"twice_exp": e, "coefficient": c, "factor": prefix}
            for e, c in to_json_rows(body)
        ]
        text = render_rows(rows, "csv", columns=["twice_exp", "coefficient", "factor"])
    else:
        series = render(body)
        text = series if prefix == "1" else f"({prefix})·({series})"
        text = f"{name} = {text} + O(q^{order + 1})"
    write_output(text, config.out, stream)
    return 0


# --- certify ----------------------------------------------------------------

def _bounds_section(catalog) -> Dict[str, Any]:
    bounds = numerator_bounds()
    numerators = catalog.numerators(list(bounds))
    empirical = {}
    for name, bound in bounds.items():
        check = check_empirical(bound, numerators[name])
        empirical[name] = {
            "ok": check.ok,
            "checked": check.checked,
            "first_violation": None if check.first_violation is None else check.first_violation.twice_value,
        }
        if not check.ok:
            logger.error(
                "Coefficient exceeds its derived bound",
                extra={"extra": {"numerator": name, "twice_exp": empirical[name]["first_violation"]}},
            )
    return {"constants": {name: b.to_json() for name, b in bounds.items()}, "empirical": empirical}


def _flagship_section() -> Dict[str, Any]:
    tail = flagship_tail()
    return dict(tail.to_json(), limit="1e-50", ok=tail.value < FLAGSHIP_LIMIT)


def _certificate_items(config: RunConfig, numerators) -> List[WorkItem]:
    needed = required_numerators(LEMMAS)
    subset = {name: numerators[name] for name in needed}
    items = [
        WorkItem(id=lemma_id, func=certify_lemma, args=(lemma_id, config.order, subset))
        for lemma_id in LEMMAS
    ]
    items.append(WorkItem(id="fhat_gap", func=certify_fhat_gap))
    return items


def _values_section() -> Dict[str, Any]:
    table = {**special_values(), **f_special_values()}
    return {name: value.to_json() for name, value in table.items()}


def _density_section(digits: int) -> Dict[str, Any]:
    return dict(density_bound(2, digits).to_json(digits), exact=density_exact(2).render())


def build_certificate(config: RunConfig) -> CertificateReport:
    with log_timing(logger, "Certificate finished", order=config.order) as timing:
        report = _assemble_certificate(config)
        timing["status"] = report.status
    return report


def _assemble_certificate(config: RunConfig) -> CertificateReport:
    catalog = load_catalog(config.order + CERTIFY_MARGIN)
    fault = None
    if config.inject_fault is not None:
        form, twice_exp = config.inject_fault
        catalog = inject_fault(catalog, form, twice_exp)
        fault = {"form": resolve_form_name(form), "twice_exp": twice_exp}

    identities = verify_identities(catalog)
    for name, failure in identities.failures().items():
        logger.error("Identity check failed", extra={"extra": dict(failure.to_json(), identity=name)})

    bounds = _bounds_section(catalog)
    numerators = catalog.numerators(required_numerators(LEMMAS))

    errors: List[Dict[str, str]] = []
    lemmas: List[Dict[str, Any]] = []
    fhat_gap: Dict[str, Any] = {"lemma_id": "fhat_gap", "status": "error"}
    for item in ParallelExecutor(config.jobs).run(_certificate_items(config, numerators)):
        if not item.ok:
            errors.append({"task": item.id, "error": item.error})
            entry = {"lemma_id": item.id, "status": "error", "message": item.error}
        else:
            entry = item.result.to_json()
            for branch in item.result.failures():
                logger.error("Certification branch failed", extra={"extra": branch.to_json()})
        if item.id == "fhat_gap":
            fhat_gap = entry
        else:
            lemmas.append(entry)

    report = CertificateReport(
        truncation_order=config.order,
        catalog_hash=catalog_hash(catalog),
        form_hashes=form_hashes(catalog),
        fault_injected=fault,
        identities=identities.to_json(),
        bounds=bounds,
        flagship_tail=_flagship_section(),
        lemmas=lemmas,
        fhat_gap=fhat_gap,
        special_values=_values_section(),
        density=_density_section(config.digits),
        errors=errors,
    )
    report.status = report.compute_status()
    return report


def _summary_rows(report: CertificateReport) -> List[Dict[str, Any]]:
    rows = [
        {"check": "identities", "status": "ok" if report.identities.get("passed") else "failed"},
        {
            "check": "bounds",
            "status": "ok" if all(b["ok"] for b in report.bounds["empirical"].values()) else "failed",
        },
        {"check": "flagship tail", "status": "ok" if report.flagship_tail.get("ok") else "failed"},
    ]
    for entry in [*report.lemmas, report.fhat_gap]:
        rows.append({"check": entry["lemma_id"], "status": entry.get("status", "error")})
    rows.append({"check": "certificate", "status": report.status})
    return rows


def _branch_rows(report: CertificateReport) -> List[Dict[str, Any]]:
    rows = []
    for entry in [*report.lemmas, report.fhat_gap]:
        for branch in entry.get("branches", []):
            rows.append({
                "lemma": branch["lemma"],
                "branch": branch["branch"],
                "lo": branch["interval"][0],
                "hi": branch["interval"][1],
                "degree": branch["degree"],
                "root_count": branch["root_count"],
                "tail_ok": branch["tail_ok"],
                "status": branch["status"],
            })
    return rows


def cmd_certify(config: Optional[RunConfig] = None, stream: TextIO = sys.stdout) -> int:
    """Full certificate run; exit 0 iff every check passed."""
    config = config or RunConfig()
    report = build_certificate(config)
    if config.format == "json":
        text = report.to_json()
    elif config.format == "csv":
        text = render_rows(_branch_rows(report), "csv")
    else:
        text = render_rows(_summary_rows(report), "text", title=f"certificate at q^{config.order}")
    write_output(text, config.out, stream)
    return 0 if report.status == "ok" else 1


# --- eval -------------------------------------------------------------------

def parse_grid(text: str) -> List[mpmath.mpf]:
    """'start:stop:count' → evenly spaced radii."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like start:stop:count, got '{text}'")
    start, stop, count = parts
    return grid_points(start, stop, int(count))


def magic_row(which: str, r, digits: int, order: Optional[int] = None) -> Dict[str, Any]:
    ball = eval_magic(which, r, digits, order)
    return {
        "r": mpmath.nstr(mpmath.mpf(r), 17),
        "value": mpmath.nstr(ball.midpoint, digits),
        "radius": mpmath.nstr(ball.radius, 3),
        "rigor": ball.rigor.value,
    }


def cmd_eval(
    which: str,
    r_values: Optional[Sequence[str]] = None,
    grid: Optional[str] = None,
    config: Optional[RunConfig] = None,
    stream: TextIO = sys.stdout,
) -> int:
    config = config or RunConfig()
    if which not in EVAL_COLUMNS:
        raise ValueError(f"unknown function '{which}'; expected one of {', '.join(EVAL_COLUMNS)}")
    if (r_values is None) == (grid is None):
        raise ValueError("give exactly one of --r and --grid")
    if grid is not None:
        with mpmath.workdps(config.digits + settings.GUARD_DIGITS):
            points = parse_grid(grid)
    else:
        # parsed at working precision by the evaluator
        points = list(r_values)
    for r in points:
        if mpmath.mpf(r) < 0:
            raise ValueError(f"r must be nonnegative, got {r}")

    func = sample_row if which in ("f", "fhat") else magic_row
    items = [
        WorkItem(
            id=f"{which}@{i}",
            func=func,
            args=(r, config.digits, config.order) if func is sample_row else (which, r, config.digits, config.order),
        )
        for i, r in enumerate(points)
    ]
    rows = []
    for item in ParallelExecutor(config.jobs).run(items):
        if not item.ok:
            raise EvaluationError(item.id, item.error)
        rows.append(item.result)

    columns = GRID_COLUMNS if grid is not None and which in ("f", "fhat") else EVAL_COLUMNS[which]
    rows = [{column: row[column] for column in columns} for row in rows]
    write_output(render_rows(rows, config.format, title=which, columns=columns), config.out, stream)
    return 0


# --- values -----------------------------------------------------------------

def numeric_value_row(which: str, r: str, digits: int) -> Dict[str, str]:
    ball = eval_f(which, r, digits)
    return {
        "name": f"{which}({r})",
        "exact": "",
        "decimal": f"{mpmath.nstr(ball.midpoint, digits)} ± {mpmath.nstr(ball.radius, 3)}",
        "provenance": "numeric",
    }


def values_rows(config: RunConfig) -> List[Dict[str, str]]:
    rows = [
        dict(zip(VALUE_COLUMNS, row))
        for row in provenance_table(config.digits)
    ]
    items = [
        WorkItem(id=f"{which}({r})", func=numeric_value_row, args=(which, r, config.digits))
        for which in ("f", "fhat")
        for r in NUMERIC_RADII
    ]
    for item in ParallelExecutor(config.jobs).run(items):
        if item.ok:
            rows.append(item.result)
        else:
            rows.append({"name": item.id, "exact": "", "decimal": item.error, "provenance": "error"})
    rows.append({
        "name": "density",
        "exact": density_row(),
        "decimal": mpmath.nstr(density_bound(2, config.digits).midpoint, config.digits),
        "provenance": "exact-symbolic",
    })
    return rows


def cmd_values(config: Optional[RunConfig] = None, stream: TextIO = sys.stdout) -> int:
    config = config or RunConfig()
    rows = values_rows(config)
    write_output(render_rows(rows, config.format, title="special values", columns=VALUE_COLUMNS), config.out, stream)
    return 0 if all(row["provenance"] != "error" for row in rows) else 1
