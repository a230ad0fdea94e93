from .formal_series import (
    HalfExp,
    FormalSeries,
    Rat,
    coefficient,
    first_difference,
    flip_half_signs,
    render,
    series_add,
    series_invert,
    series_mul,
    series_neg,
    series_normalize,
    series_pow,
    series_restrict,
    series_scale,
    series_shift,
    series_sub,
    series_truncate,
    to_json_rows,
)

__all__ = [
    "HalfExp",
    "FormalSeries",
    "Rat",
    "coefficient",
    "first_difference",
    "flip_half_signs",
    "render",
    "series_add",
    "series_invert",
    "series_mul",
    "series_neg",
    "series_normalize",
    "series_pow",
    "series_restrict",
    "series_scale",
    "series_shift",
    "series_sub",
    "series_truncate",
    "to_json_rows",
]
