"""
Rendering of command results as JSON, CSV or a rich table.
"""
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

import pandas as pd
from rich.console import Console
from rich.table import Table

from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)


def rows_to_json(rows: Sequence[Dict[str, Any]]) -> str:
    return json.dumps(list(rows), indent=2, ensure_ascii=False, default=str)


def rows_to_csv(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    frame = pd.DataFrame(list(rows), columns=columns)
    return frame.to_csv(index=False)


def rows_to_text(rows: Sequence[Dict[str, Any]], title: Optional[str] = None, columns: Optional[List[str]] = None) -> str:
    columns = columns or (list(rows[0].keys()) if rows else [])
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(row.get(column, "")) for column in columns))
    buffer = io.StringIO()
    Console(file=buffer, width=160, no_color=True).print(table)
    return buffer.getvalue()


def render_rows(
    rows: Sequence[Dict[str, Any]],
    fmt: str,
    title: Optional[str] = None,
    columns: Optional[List[str]] = None,
) -> str:
    if fmt == "json":
        return rows_to_json(rows)
    if fmt == "csv":
        return rows_to_csv(rows, columns)
    if fmt == "text":
        return rows_to_text(rows, title, columns)
    raise ValueError(f"unknown output format '{fmt}'")


def write_output(text: str, out: Optional[Path], stream: TextIO) -> None:
    """Write to `out` when given, else to the stream."""
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        stream.write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("Wrote output", extra={"extra": {"path": str(out), "bytes": len(text.encode("utf-8"))}})
