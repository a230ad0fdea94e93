from .logging_config import log_timing, setup_logging
from .cache import CatalogCache, catalog_cache
from .output import render_rows, rows_to_csv, rows_to_json, rows_to_text, write_output

__all__ = [
    "setup_logging",
    "log_timing",
    "CatalogCache",
    "catalog_cache",
    "render_rows",
    "rows_to_csv",
    "rows_to_json",
    "rows_to_text",
    "write_output",
]
