"""
Independent check that a and b are radial Fourier eigenfunctions in R²⁴.

For a radial g the transform is ĝ(s) = 2π·s⁻¹¹·∫₀^∞ g(r)·J₁₁(2πrs)·r¹² dr;
it is computed by composite Gauss–Legendre quadrature on [0, R] against
evaluated values of the normalized functions, and compared with +g (for a)
and -g (for b).
"""
from dataclasses import dataclass
from math import factorial, pi
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import jv

from app.errors import QuadratureError
from app.magic.evaluate import eval_magic, normalizer
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

BESSEL_ORDER = 11
PANEL_WIDTH = 0.5
EIGENVALUES = {"a": 1, "b": -1}


@dataclass(frozen=True)
class OracleResidual:
    s: float
    transform: float
    expected: float
    residual: float

    def to_json(self) -> Dict[str, Any]:
        return {"s": self.s, "transform": self.transform, "expected": self.expected, "residual": self.residual}


def quadrature_nodes(radius: float, nodes_per_panel: int):
    """Nodes and weights of the composite rule on [0, radius]."""
    x, w = leggauss(nodes_per_panel)
    panels = int(round(radius / PANEL_WIDTH))
    starts = np.arange(panels) * PANEL_WIDTH
    half = PANEL_WIDTH / 2
    nodes = (starts[:, None] + half * (x[None, :] + 1)).ravel()
    weights = np.tile(half * w, panels)
    return nodes, weights


def hankel_kernel(r: np.ndarray, s: float) -> np.ndarray:
    """2π·s⁻¹¹·J₁₁(2πrs)·r¹², with its s → 0 limit."""
    if s == 0:
        return 2 * pi * (pi * r) ** BESSEL_ORDER / factorial(BESSEL_ORDER) * r ** 12
    return 2 * pi * s ** (-BESSEL_ORDER) * jv(BESSEL_ORDER, 2 * pi * r * s) * r ** 12


def normalized_value(which: str, r: float, digits: int) -> float:
    return float(eval_magic(which, r, digits).midpoint * normalizer(which))


def eigenfunction_oracle(
    which: str,
    samples: Sequence[float],
    digits: Optional[int] = None,
    radius: Optional[float] = None,
    nodes_per_panel: Optional[int] = None,
) -> List[OracleResidual]:
    """|ĝ(s) - λ·g(s)| at each sample, λ = +1 for a and -1 for b."""
    if which not in EIGENVALUES:
        raise ValueError(f"unknown eigenfunction '{which}'; expected 'a' or 'b'")
    digits = settings.ORACLE_DIGITS if digits is None else digits
    radius = settings.ORACLE_RADIUS if radius is None else radius
    nodes_per_panel = settings.ORACLE_PANEL_NODES if nodes_per_panel is None else nodes_per_panel
    for s in samples:
        if not 0 <= s <= radius:
            raise ValueError(f"sample {s} outside [0, {radius}]")

    nodes, weights = quadrature_nodes(radius, nodes_per_panel)
    values = np.array([normalized_value(which, r, digits) for r in nodes])

    # the integrand must have decayed before the cut at r = radius
    last_panel = nodes > radius - PANEL_WIDTH
    edge = float(np.max(np.abs(values[last_panel] * nodes[last_panel] ** 12)))
    if not np.isfinite(edge) or edge > settings.ORACLE_TOLERANCE:
        raise QuadratureError(
            f"integrand still {edge:.3e} near r = {radius}; increase the oracle radius"
        )

    out = []
    for s in samples:
        transform = float(np.sum(weights * values * hankel_kernel(nodes, float(s))))
        expected = EIGENVALUES[which] * normalized_value(which, s, digits)
        out.append(OracleResidual(float(s), transform, expected, abs(transform - expected)))
    logger.info(
        "Eigenfunction oracle",
        extra={"extra": {
            "which": which,
            "samples": len(out),
            "max_residual": max((o.residual for o in out), default=0.0),
        }},
    )
    return out
