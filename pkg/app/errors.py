"""Exception hierarchy shared by every subpackage."""
from typing import Any, Dict, List, Optional


class LeechError(Exception):
    """Base class for all errors raised by the package."""


class DegenerateSeriesError(LeechError):
    """Series inversion asked of a series whose leading coefficient is zero."""


class TruncationError(LeechError):
    """Coefficient requested at or above a series' truncation order."""

    def __init__(self, exponent: Any, trunc_order: Any):
        self.exponent = exponent
        self.trunc_order = trunc_order
        super().__init__(
            f"coefficient at q^{exponent} is unknown (truncated at q^{trunc_order})"
        )


class UnsupportedWeightError(LeechError):
    pass


class UnknownFormError(LeechError):
    pass


class UnknownBoundError(LeechError):
    pass


class DivergentTailError(LeechError):
    pass


class EndpointRootError(LeechError):
    """A polynomial handed to Sturm counting vanishes at an interval endpoint."""

    def __init__(self, endpoint: Any):
        self.endpoint = endpoint
        super().__init__(f"polynomial vanishes at endpoint {endpoint}")


class InconsistentGridError(LeechError):
    pass


class MissingTailBoundError(LeechError):
    pass


class CertificationError(LeechError):
    """A certification branch failed; carries the branch transcript."""

    def __init__(self, message: str, transcript: Optional[List[Dict[str, Any]]] = None):
        self.transcript = transcript or []
        super().__init__(message)


class PrecisionError(LeechError):
    pass


class QuadratureError(LeechError):
    pass


class EvaluationError(LeechError):
    """A work item of an evaluation run failed; `detail` is the worker's error."""

    def __init__(self, item_id: str, detail: Optional[str]):
        self.item_id = item_id
        self.detail = detail
        super().__init__(f"evaluation {item_id} failed: {detail}")
