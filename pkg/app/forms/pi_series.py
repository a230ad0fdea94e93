from dataclasses import dataclass
from typing import Any, Dict, Union

from app.series import FormalSeries, Rat, series_mul, series_neg, series_scale, to_json_rows


@dataclass(frozen=True)
class PiSeries:
    """
    body · π^pi_power · i^i_power

    Normal form keeps i_power in {0, 1}: a factor i² is folded into the
    sign of the body.
    """

    body: FormalSeries
    pi_power: int = 0
    i_power: int = 0

    def __post_init__(self):
        ip = self.i_power % 4
        body = self.body
        if ip >= 2:
            body = series_neg(body)
            ip -= 2
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "i_power", ip)

    @property
    def trunc_order(self):
        return self.body.trunc_order

    def __mul__(self, other: Union["PiSeries", FormalSeries]) -> "PiSeries":
        if isinstance(other, FormalSeries):
            other = PiSeries(other)
        return PiSeries(
            series_mul(self.body, other.body),
            self.pi_power + other.pi_power,
            self.i_power + other.i_power,
        )

    def scale(self, c: Rat) -> "PiSeries":
        return PiSeries(series_scale(self.body, c), self.pi_power, self.i_power)

    def with_body(self, body: FormalSeries) -> "PiSeries":
        return PiSeries(body, self.pi_power, self.i_power)

    def to_json(self) -> Dict[str, Any]:
        return {
            "coefficients": to_json_rows(self.body),
            "pi_power": self.pi_power,
            "i_power": self.i_power,
            "min_exp": self.body.min_exp.twice_value,
            "trunc_order": self.body.trunc_order.twice_value,
        }
