"""
Midpoint-radius values for everything the evaluator returns.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Union

import mpmath

Number = Union[int, float, str, mpmath.mpf]


class Rigor(str, Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


def _join(a: Rigor, b: Rigor) -> Rigor:
    return Rigor.CERTIFIED if a is Rigor.CERTIFIED and b is Rigor.CERTIFIED else Rigor.HEURISTIC


@dataclass(frozen=True)
class BallValue:
    midpoint: mpmath.mpf
    radius: mpmath.mpf
    rigor: Rigor = Rigor.HEURISTIC

    def __post_init__(self):
        object.__setattr__(self, "midpoint", mpmath.mpf(self.midpoint))
        object.__setattr__(self, "radius", mpmath.mpf(self.radius))
        if self.radius < 0:
            raise ValueError(f"ball radius must be nonnegative, got {self.radius}")

    @classmethod
    def exact(cls, value: Number) -> "BallValue":
        return cls(mpmath.mpf(value), mpmath.mpf(0), Rigor.CERTIFIED)

    @property
    def upper(self) -> mpmath.mpf:
        return self.midpoint + self.radius

    @property
    def lower(self) -> mpmath.mpf:
        return self.midpoint - self.radius

    def contains(self, x: Number, slack: Number = 0) -> bool:
        return abs(mpmath.mpf(x) - self.midpoint) <= self.radius + mpmath.mpf(slack)

    def __add__(self, other: "BallValue") -> "BallValue":
        return BallValue(self.midpoint + other.midpoint, self.radius + other.radius, _join(self.rigor, other.rigor))

    def __neg__(self) -> "BallValue":
        return BallValue(-self.midpoint, self.radius, self.rigor)

    def __sub__(self, other: "BallValue") -> "BallValue":
        return self + (-other)

    def scale(self, c: Number) -> "BallValue":
        c = mpmath.mpf(c)
        return BallValue(c * self.midpoint, abs(c) * self.radius, self.rigor)

    def __float__(self) -> float:
        return float(self.midpoint)

    def to_json(self, digits: int = 30) -> Dict[str, Any]:
        return {
            "midpoint": mpmath.nstr(self.midpoint, digits, strip_zeros=False),
            "radius": mpmath.nstr(self.radius, 3),
            "rigor": self.rigor.value,
        }

    def __repr__(self) -> str:
        return f"BallValue({mpmath.nstr(self.midpoint, 20)} ± {mpmath.nstr(self.radius, 3)}, {self.rigor.value})"
