"""
Run configuration and the versioned certificate report.
"""
import re
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app import __version__
from app.settings import settings

REPORT_SCHEMA = 1
VOLATILE_FIELDS = ("timestamp", "wall_time")

_FAULT = re.compile(r"^(?P<form>[A-Za-z0-9_]+):(?P<exp>-?\d+)$")


def parse_order(text: str) -> int:
    """'60' or 'q60' → 60."""
    value = text.strip()
    if value[:1] in ("q", "Q"):
        value = value[1:]
    return int(value)


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: int = Field(default_factory=lambda: settings.TRUNCATION_ORDER, ge=10)
    digits: int = Field(default_factory=lambda: settings.EVAL_DIGITS, ge=10)
    out: Optional[Path] = None
    format: Literal["json", "csv", "text"] = Field(default_factory=lambda: settings.OUTPUT_FORMAT)
    jobs: int = Field(default_factory=lambda: settings.JOBS, ge=1)
    inject_fault: Optional[Tuple[str, int]] = None

    @field_validator("inject_fault", mode="before")
    @classmethod
    def _parse_fault(cls, value: Any) -> Any:
        if value is None or isinstance(value, (tuple, list)):
            return value
        match = _FAULT.match(str(value))
        if not match:
            raise ValueError("expected FORM:TWICE_EXP, e.g. E4:6")
        return (match["form"], int(match["exp"]))


class CertificateReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    tool_version: str = __version__
    truncation_order: int
    catalog_hash: str
    form_hashes: Dict[str, str]
    fault_injected: Optional[Dict[str, Any]] = None
    identities: Dict[str, Any]
    bounds: Dict[str, Any]
    flagship_tail: Dict[str, Any]
    lemmas: List[Dict[str, Any]]
    fhat_gap: Dict[str, Any]
    special_values: Dict[str, Any]
    density: Dict[str, Any]
    errors: List[Dict[str, str]] = Field(default_factory=list)
    status: str = "failed"
    timestamp: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def compute_status(self) -> str:
        """ok only when every sub-result is ok and nothing raised."""
        parts = [
            self.identities.get("passed", False),
            all(b.get("ok", False) for b in self.bounds.get("empirical", {}).values()),
            self.flagship_tail.get("ok", False),
            bool(self.lemmas) and all(lemma.get("status") == "ok" for lemma in self.lemmas),
            self.fhat_gap.get("status") == "ok",
            not self.errors,
        ]
        return "ok" if all(parts) else "failed"

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def strip_volatile(payload: Any) -> Any:
    """Drop timestamp and wall_time fields at any depth, for determinism checks."""
    if isinstance(payload, dict):
        return {k: strip_volatile(v) for k, v in payload.items() if k not in VOLATILE_FIELDS}
    if isinstance(payload, list):
        return [strip_volatile(v) for v in payload]
    return payload
