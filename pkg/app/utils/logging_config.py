import json
import logging
import os
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Optional

from app.settings import settings


def _encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


class JSONFormatter(logging.Formatter):
    """
    JSON-lines formatter; fields passed as extra={"extra": {...}} are merged in
    """

    def format(self, record):
        log_obj = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
            # worker processes share stderr
            "pid": record.process or os.getpid(),
        }

        if hasattr(record, 'extra'):
            log_obj.update(record.extra)

        if record.exc_info:
            log_obj["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_obj, default=_encode)


DEBUG_FORMAT = '%(asctime)s %(levelname)-7s [%(process)d] %(name)s:%(lineno)d %(message)s'


def default_log_file() -> Path:
    return settings.LOGS_DIR / f"leech_magic_{datetime.now():%Y%m%d}.log"


def setup_logging(
    name: Optional[str] = None,
    level: Optional[str] = None,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    Module logger on stderr: JSON lines, or a plain format when LEECH_DEBUG is set.

    A file handler is added for `log_file`, or for default_log_file() when
    LEECH_LOG_TO_FILE is on; the file always gets JSON.
    """
    log_level = getattr(logging, (level or settings.LOG_LEVEL).upper())
    logger = logging.getLogger(name or "leech_magic")
    logger.setLevel(log_level)
    logger.handlers.clear()
    logger.propagate = False

    # stdout belongs to command output
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(
        logging.Formatter(DEBUG_FORMAT, datefmt='%H:%M:%S') if settings.DEBUG else JSONFormatter()
    )
    handlers = [stderr_handler]

    target = Path(log_file) if log_file else (default_log_file() if settings.LOG_TO_FILE else None)
    if target is not None:
        target.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(target)
        file_handler.setFormatter(JSONFormatter())
        handlers.append(file_handler)

    for handler in handlers:
        handler.setLevel(log_level)
        logger.addHandler(handler)
    return logger


@contextmanager
def log_timing(logger: logging.Logger, message: str, **fields: Any) -> Iterator[dict]:
    """
    Log `message` with wall time once the block exits.

    The yielded dict is merged into the record, so callers can attach
    results computed inside the block.
    """
    extra = dict(fields)
    start = time.perf_counter()
    try:
        yield extra
    finally:
        extra["wall_time"] = round(time.perf_counter() - start, 6)
        logger.info(message, extra={"extra": extra})


root_logger = logging.getLogger()
root_logger.setLevel(logging.WARNING)
