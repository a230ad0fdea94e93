"""
Tests for coefficient bounds and truncation tails
"""
from fractions import Fraction

import pytest

from app.bounds import (
    Grid,
    PowerBound,
    base_bound,
    bound_product,
    bound_regrid,
    bound_shift,
    bound_sum,
    check_empirical,
    flagship_tail,
    numerator_bound,
    numerator_bounds,
    tail_bound,
)
from app.errors import DivergentTailError, InconsistentGridError, UnknownBoundError
from app.series import FormalSeries, HalfExp


class TestPowerBound:
    def test_product_rule(self):
        b = bound_product(base_bound("E4"), base_bound("E6"))
        assert b.C == 240 * 504
        assert b.k == 4 + 6 + 1

    def test_sum_keeps_larger_exponent(self):
        b = bound_sum(base_bound("E2"), base_bound("E6"))
        assert b.C == 24 + 504
        assert b.k == 6

    def test_mixed_grids_regrid(self):
        b = bound_product(base_bound("E4"), base_bound("Th01_4"))
        assert b.grid is Grid.HALF

    def test_regrid_keeps_constants(self):
        b = bound_regrid(base_bound("E4"))
        assert (b.C, b.k, b.grid) == (Fraction(240), 4, Grid.HALF)

    def test_half_shift_on_integer_grid_regrids(self):
        b = bound_shift(base_bound("E4"), HalfExp(1))
        assert b.grid is Grid.HALF
        assert b.shift == HalfExp(1)

    def test_inconsistent_grid(self):
        with pytest.raises(InconsistentGridError):
            PowerBound(Fraction(1), 1, Grid.INTEGER, HalfExp(1))

    def test_unknown_names(self):
        with pytest.raises(UnknownBoundError):
            base_bound("E8")
        with pytest.raises(UnknownBoundError):
            numerator_bound("nosuch")


class TestNumeratorBounds:
    def test_phi_numerator_constant(self):
        b = numerator_bound("phi")
        assert b.C == 513200655360
        assert b.k == 20
        assert b.grid is Grid.INTEGER

    def test_delta_squared_shift(self):
        bounds = numerator_bounds()
        assert bounds["Delta2_over_q"].shift == HalfExp(-2)
        assert bounds["Delta2"].C == bounds["Delta2_over_q"].C

    def test_bounds_hold_on_catalog(self, catalog):
        bounds = numerator_bounds()
        numerators = catalog.numerators(list(bounds))
        for name, bound in bounds.items():
            check = check_empirical(bound, numerators[name])
            assert check.ok, (name, check.first_violation)
            assert check.checked > 0

    def test_violation_reported(self):
        bound = PowerBound(Fraction(1), 0)
        s = FormalSeries({0: 1, 2: 5}, HalfExp(0), HalfExp(4))
        check = check_empirical(bound, s)
        assert not check.ok
        assert check.first_violation == HalfExp(2)
        assert check.checked == 1


class TestTails:
    def test_flagship_tail_below_budget(self):
        tail = flagship_tail()
        assert tail.value < Fraction(1, 10 ** 50)
        assert tail.n0 == 50
        assert tail.q0 == Fraction(1, 535)
        assert tail.normalize_at == 6

    def test_tail_decreases_with_n0(self):
        b = numerator_bound("phi")
        assert tail_bound(b, 60, Fraction(1, 535), 6).value < tail_bound(b, 50, Fraction(1, 535), 6).value

    def test_geometric_tail_matches_closed_form(self):
        # Σ_{e≥1} (1/2)^e = 1 for C = 1, k = 0
        b = PowerBound(Fraction(1), 0)
        tail = tail_bound(b, 1, Fraction(1, 2), 0, partial_terms=10)
        assert tail.value == 1

    def test_divergent_tail(self):
        with pytest.raises(DivergentTailError):
            tail_bound(numerator_bound("phi"), 50, Fraction(1), 6)

    def test_n0_must_exceed_normalization(self):
        with pytest.raises(ValueError):
            tail_bound(numerator_bound("phi"), 6, Fraction(1, 535), 6)

    def test_to_json(self):
        payload = flagship_tail().to_json()
        assert payload["n0"] == 50
        assert payload["value_exact_log10"] <= -50

    def test_psi_numerator_tail_at_small_t_cut(self):
        """ψ_IΔ² beyond half-step 100 at u ≤ 1/23, normalized at u^12"""
        b = numerator_bound("psiI")
        assert (b.C, b.k, b.grid) == (16 * Fraction(24) ** 7, 20, Grid.HALF)
        tail = tail_bound(b, 100, Fraction(1, 23), 12)
        first_term = b.C * 101 ** 20 * Fraction(1, 23) ** 88
        assert first_term <= tail.value <= 2 * first_term
        assert tail.value < Fraction(1, 10 ** 50)

    def test_tail_grows_with_q0(self):
        b = numerator_bound("psiI")
        assert tail_bound(b, 100, Fraction(1, 24), 12).value < tail_bound(b, 100, Fraction(1, 23), 12).value
