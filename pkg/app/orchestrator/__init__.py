from .commands import build_certificate, cmd_certify, cmd_eval, cmd_expand, cmd_values, parse_grid
from .parallel import ParallelExecutor, WorkItem
from .report import CertificateReport, RunConfig, parse_order, strip_volatile

__all__ = [
    "build_certificate",
    "cmd_certify",
    "cmd_eval",
    "cmd_expand",
    "cmd_values",
    "parse_grid",
    "ParallelExecutor",
    "WorkItem",
    "CertificateReport",
    "RunConfig",
    "parse_order",
    "strip_volatile",
]
