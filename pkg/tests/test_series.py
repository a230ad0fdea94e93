"""
Tests for the exact q^{1/2}-series core
"""
from fractions import Fraction

import pytest

from app.errors import DegenerateSeriesError, TruncationError
from app.series import (
    FormalSeries,
    HalfExp,
    coefficient,
    first_difference,
    flip_half_signs,
    render,
    series_invert,
    series_mul,
    series_normalize,
    series_pow,
    series_restrict,
    series_shift,
    series_truncate,
)


def q_series(coeffs, start=0, trunc=None):
    return FormalSeries.from_q_coefficients([Fraction(c) for c in coeffs], start, trunc)


class TestHalfExp:
    def test_parse(self):
        assert HalfExp.parse("2") == HalfExp(4)
        assert HalfExp.parse("-1") == HalfExp(-2)
        assert HalfExp.parse("1/2") == HalfExp(1)
        assert HalfExp.parse("-3/2") == HalfExp(-3)

    def test_parse_rejects_other_denominators(self):
        with pytest.raises(ValueError):
            HalfExp.parse("1/3")

    def test_arithmetic_and_str(self):
        assert HalfExp(3) + HalfExp(1) == HalfExp(4)
        assert str(HalfExp(3)) == "3/2"
        assert str(HalfExp(-4)) == "-2"
        assert HalfExp(1) * 3 == HalfExp(3)
        assert HalfExp(4).as_fraction() == 2


class TestFormalSeries:
    def test_zeros_are_dropped(self):
        s = q_series([1, 0, 3])
        assert dict(s.terms) == {0: 1, 4: 3}
        assert len(s) == 2

    def test_terms_at_or_above_truncation_are_unknown(self):
        s = FormalSeries({0: 1, 2: 5, 6: 7}, HalfExp(0), HalfExp(4))
        assert 6 not in s.terms
        with pytest.raises(TruncationError):
            coefficient(s, 2)

    def test_coefficient_below_min_exp_rejected(self):
        with pytest.raises(ValueError):
            FormalSeries({-2: 1}, HalfExp(0), HalfExp(4))

    def test_product_truncation(self):
        a = q_series([1, 1], trunc=5)
        b = q_series([1, -1], trunc=5)
        prod = series_mul(a, b)
        assert prod.trunc_order == HalfExp.from_q(5)
        assert coefficient(prod, 0) == 1
        assert coefficient(prod, 1) == 0
        assert coefficient(prod, 2) == -1

    def test_product_of_laurent_series_loses_precision(self):
        a = FormalSeries({-2: 1}, HalfExp(-2), HalfExp(6))
        b = q_series([1, 2, 3, 4], trunc=4)
        prod = series_mul(a, b)
        assert prod.min_exp == HalfExp(-2)
        assert prod.trunc_order == HalfExp(6)

    def test_invert_geometric(self):
        one_minus_q = q_series([1, -1], trunc=10)
        inv = series_invert(one_minus_q)
        assert all(coefficient(inv, n) == 1 for n in range(10))
        assert series_truncate(series_mul(inv, one_minus_q), HalfExp.from_q(10)) == FormalSeries.one(HalfExp.from_q(10))

    def test_invert_laurent(self):
        # (q - q²)⁻¹ = q⁻¹ + 1 + q + …
        s = series_normalize(q_series([0, 1, -1], trunc=8))
        inv = series_invert(s)
        assert inv.min_exp == HalfExp.from_q(-1)
        assert inv.trunc_order == HalfExp.from_q(6)
        assert coefficient(inv, -1) == 1
        assert coefficient(inv, 5) == 1

    def test_invert_delta(self):
        delta = series_normalize(q_series([0, 1, -24, 252, -1472], trunc=5))
        inv = series_invert(delta)
        assert [coefficient(inv, n) for n in range(-1, 3)] == [1, 24, 324, 3200]

    def test_invert_rejects_zero_leading(self):
        with pytest.raises(DegenerateSeriesError):
            series_invert(q_series([0, 1], trunc=4))

    def test_rational_coefficients_stay_exact(self):
        s = q_series([Fraction(1, 3), Fraction(1, 7)], trunc=4)
        sq = series_pow(s, 2)
        assert coefficient(sq, 0) == Fraction(1, 9)
        assert coefficient(sq, 1) == Fraction(2, 21)
        assert coefficient(sq, 2) == Fraction(1, 49)

    def test_negative_power_is_inverse(self):
        s = q_series([1, 2], trunc=6)
        assert series_pow(s, -1) == series_invert(s)

    def test_shift_half_step(self):
        s = series_shift(q_series([1, 1], trunc=3), HalfExp(1))
        assert dict(s.terms) == {1: 1, 3: 1}
        assert s.trunc_order == HalfExp(7)

    def test_restrict_and_flip(self):
        s = FormalSeries({0: 1, 1: 2, 2: 3, 3: 4}, HalfExp(0), HalfExp(6))
        assert dict(series_restrict(s, "even").terms) == {0: 1, 2: 3}
        assert dict(series_restrict(s, "odd").terms) == {1: 2, 3: 4}
        assert dict(flip_half_signs(s).terms) == {0: 1, 1: -2, 2: 3, 3: -4}

    def test_first_difference(self):
        a = FormalSeries({0: 1, 3: 2}, HalfExp(0), HalfExp(8))
        b = FormalSeries({0: 1, 3: 5}, HalfExp(0), HalfExp(6))
        assert first_difference(a, b) == HalfExp(3)
        assert first_difference(a, a) is None

    def test_render(self):
        s = q_series([0, 1, -24, 252], trunc=4)
        assert render(s) == "q − 24·q² + 252·q³"
        assert render(s, ascii_only=True) == "q - 24*q^2 + 252*q^3"
        assert render(FormalSeries.zero(HalfExp(4))) == "0"
