"""
Tests for exact polynomials, Sturm counting and the lemma certificates
"""
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from app.certify import (
    LEMMA_PLANS,
    STATUS_OK,
    BranchResult,
    CertResult,
    RatPoly,
    Sense,
    TPiPoly,
    bisection_root_count,
    build_expression,
    certify_fhat_gap,
    certify_lemma,
    count_real_roots,
    fhat_gap_polynomial,
    initial_window,
    lemma_plan,
    pi_bounds,
    poly_gcd,
    reduce_branch,
    required_numerators,
    split_window,
    sturm_chain,
    u_enclosure,
)
from app.errors import CertificationError, EndpointRootError, LeechError
from app.series import FormalSeries, HalfExp


class TestRatPoly:
    def test_trailing_zeros_dropped(self):
        p = RatPoly([1, 2, 0, 0])
        assert p.degree == 1
        assert RatPoly([]).degree == -1

    def test_divmod(self):
        p = RatPoly.from_roots([1, 2, 3])
        q, r = p.divmod(RatPoly.from_roots([2]))
        assert r.is_zero()
        assert q == RatPoly.from_roots([1, 3])

    def test_sign_at_is_exact(self):
        p = RatPoly.from_roots([Fraction(1, 3)])
        assert p.sign_at(Fraction(1, 3)) == 0
        assert p.sign_at(Fraction(1, 3) + Fraction(1, 10 ** 40)) == 1

    def test_gcd(self):
        a = RatPoly.from_roots([1, 2, 2])
        b = RatPoly.from_roots([2, 5])
        assert poly_gcd(a, b) == RatPoly.from_roots([2])

    def test_strip_low_powers(self):
        p, m = RatPoly([0, 0, 3, 1]).strip_low_powers()
        assert m == 2
        assert p == RatPoly([3, 1])


class TestSturm:
    def test_counts_distinct_roots(self):
        p = RatPoly.from_roots([Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), 3])
        assert count_real_roots(p, Fraction(0), Fraction(1)) == 2
        assert count_real_roots(p, Fraction(0), Fraction(4)) == 3

    def test_no_real_roots(self):
        p = RatPoly([1, 0, 1])
        assert count_real_roots(p, Fraction(-10), Fraction(10)) == 0

    def test_endpoint_root_raises(self):
        p = RatPoly.from_roots([1])
        with pytest.raises(EndpointRootError):
            count_real_roots(p, Fraction(0), Fraction(1))

    def test_empty_interval(self):
        with pytest.raises(ValueError):
            count_real_roots(RatPoly([1, 1]), Fraction(1), Fraction(1))

    def test_chain_starts_squarefree(self):
        p = RatPoly.from_roots([1, 1, 2])
        assert sturm_chain(p)[0].degree == 2

    def test_textbook_chain(self):
        assert sturm_chain(RatPoly([-1, 0, 1])) == [RatPoly([-1, 0, 1]), RatPoly([0, 2]), RatPoly([1])]

    def test_two_rational_roots(self):
        p = RatPoly.from_roots([Fraction(1, 3), Fraction(1, 4)])
        assert count_real_roots(p, Fraction(0), Fraction(1)) == 2

    def test_chain_ends_in_constant(self):
        p = RatPoly.from_roots([Fraction(1, 7), Fraction(2, 7), 5]) * RatPoly([3, 0, 1])
        assert sturm_chain(p)[-1].degree == 0

    def test_matches_sympy_root_count(self):
        p = RatPoly.from_roots([Fraction(-1, 2), Fraction(1, 9), Fraction(1, 9), Fraction(5, 3)]) * RatPoly([2, 0, 1])
        for lo, hi in [(Fraction(-1), Fraction(1)), (Fraction(0), Fraction(2)), (Fraction(1, 5), Fraction(3, 2))]:
            expected = int(p.squarefree().poly.count_roots(lo, hi))
            assert count_real_roots(p, lo, hi) == expected

    @pytest.mark.slow
    def test_agrees_with_bisection_oracle(self):
        """Random products of well-separated rational roots and positive quadratics"""
        rng = np.random.default_rng(20240601)
        lo, hi = Fraction(0), Fraction(2)
        candidates = [k for k in range(-30, 150) if k not in (0, 118)]
        mismatches = []
        for trial in range(500):
            count = int(rng.integers(1, 13))
            roots = [Fraction(int(k), 59) for k in rng.choice(candidates, size=count, replace=False)]
            p = RatPoly.from_roots(roots)
            for k in rng.choice(roots, size=int(rng.integers(0, min(count, 6) + 1)), replace=False):
                p = p * RatPoly.from_roots([k])
            while p.degree + 2 <= 40 and rng.random() < 0.3:
                p = p * RatPoly([int(rng.integers(1, 50)), 0, 1])
            assert p.degree <= 40
            sturm = count_real_roots(p, lo, hi)
            oracle = bisection_root_count(p, lo, hi, samples=2000)
            if sturm != oracle:
                mismatches.append((trial, sturm, oracle))
        assert mismatches == []


class TestWindows:
    def test_u_enclosure_contains_value(self):
        lo, hi = u_enclosure(Fraction(3, 2))
        assert lo < hi
        with mpmath.workdps(60):
            value = mpmath.exp(-mpmath.pi * 1.5)
            assert mpmath.mpf(lo.numerator) / lo.denominator <= value <= mpmath.mpf(hi.numerator) / hi.denominator

    def test_initial_window(self):
        window = initial_window()
        assert window.unbounded
        assert window.u_hi == Fraction(1, 23)
        assert window.K == Fraction(1, 23)

    def test_split_unbounded(self):
        bounded, tail = split_window(initial_window())
        assert (bounded.t_lo, bounded.t_hi) == (1, 2)
        assert tail.unbounded and tail.t_lo == 2
        assert bounded.depth == tail.depth == 1
        assert tail.u_hi < bounded.u_hi

    def test_split_bounded(self):
        left, right = split_window(split_window(initial_window())[0])
        assert left.t_hi == right.t_lo == Fraction(3, 2)

    def test_pi_bounds(self):
        lo, hi = pi_bounds(10)
        assert lo < Fraction(314159265359, 10 ** 11) < hi
        assert hi - lo == Fraction(1, 10 ** 10)


def _mp(c):
    return mpmath.mpf(c.numerator) / c.denominator


def _true_value(expr, t, u):
    """(value, Σ|term|) of the truncated expression at t with u = e^{-πt}"""
    value, scale = mpmath.mpf(0), mpmath.mpf(0)
    for (j, p), series in expr.terms.items():
        for e, c in series.terms.items():
            term = _mp(c) * t ** j * mpmath.pi ** p * u ** e
            value += term
            scale += abs(term)
    return value, scale


def _reduced_value(reduced, u):
    return mpmath.fsum(_mp(c) * u ** i for i, c in enumerate(reduced.poly.coeffs)) / u ** reduced.cleared_power


def _random_expression(rng):
    keys = {(int(rng.integers(0, 3)), int(rng.integers(-1, 3))) for _ in range(3)}
    terms = {}
    for key in keys:
        coeffs = {
            int(e): Fraction(int(rng.integers(-1000, 1001)), int(rng.integers(1, 50)))
            for e in rng.choice(np.arange(-2, 14), size=6, replace=False)
        }
        terms[key] = FormalSeries(coeffs, HalfExp(-2), HalfExp(14))
    return TPiPoly(terms)


class TestReductionIsOneSided:
    """The reduced polynomial bounds the truncated expression from the side opposite its sense"""

    def assert_one_sided(self, expr, window, sense, t, tail=None):
        with mpmath.workdps(60):
            t = mpmath.mpf(t)
            u = mpmath.exp(-mpmath.pi * t)
            reduced = reduce_branch(expr, window, sense, tail=tail)
            value, scale = _true_value(expr, t, u)
            bound = _reduced_value(reduced, u)
            slack = scale * mpmath.mpf(10) ** -45
            if sense is Sense.POSITIVE:
                assert bound <= value + slack, (t, bound, value)
            else:
                assert bound >= value - slack, (t, bound, value)

    def test_plain_series_passes_through(self):
        expr = TPiPoly({(0, 0): FormalSeries({2: 3, 4: -5}, HalfExp(0), HalfExp(8))})
        reduced = reduce_branch(expr, initial_window(), Sense.POSITIVE)
        assert reduced.poly == RatPoly([0, 0, 3, 0, -5])
        assert reduced.cleared_power == 0
        assert reduced.replacements == []

    def test_t_over_pi_lower_bound(self):
        expr = TPiPoly({(1, -1): FormalSeries({2: 1}, HalfExp(0), HalfExp(8))})
        reduced = reduce_branch(expr, initial_window(), Sense.POSITIVE)
        # t ≥ 1 and 1/π ≥ 10^10/31415926536
        assert reduced.poly == RatPoly.from_exponents({2: Fraction(10 ** 10, 31415926536)})
        assert {(r.factor, r.direction.value) for r in reduced.replacements} == {("pi", "lower"), ("t", "lower")}

    def test_t_upper_bound_clears_negative_powers(self):
        expr = TPiPoly({(2, 0): FormalSeries({0: -1}, HalfExp(0), HalfExp(8))})
        reduced = reduce_branch(expr, initial_window(), Sense.POSITIVE)
        # -t^2 ≥ -(1/23)^2 u^-2, cleared by u^2
        assert reduced.cleared_power == 2
        assert reduced.poly == RatPoly([Fraction(-1, 529)])

    def test_random_expressions(self):
        rng = np.random.default_rng(20240617)
        bounded, tail_window = split_window(initial_window())
        windows = [(initial_window(), 1, 6), (bounded, 1, 2), (tail_window, 2, 6)]
        for _ in range(100):
            expr = _random_expression(rng)
            sense = Sense.POSITIVE if rng.random() < 0.5 else Sense.NEGATIVE
            window, lo, hi = windows[int(rng.integers(0, len(windows)))]
            t = lo + (hi - lo) * float(rng.random())
            tail = Fraction(1, 10 ** 6) if rng.random() < 0.5 else None
            self.assert_one_sided(expr, window, sense, t, tail)

    def test_lemma_branches(self, catalog):
        rng = np.random.default_rng(7)
        numerators = catalog.numerators(required_numerators(list(LEMMA_PLANS)))
        for lemma_id in LEMMA_PLANS:
            for plan in lemma_plan(lemma_id):
                expr = build_expression(plan, numerators, 10)
                for t in 1 + 4 * rng.random(5):
                    self.assert_one_sided(expr, initial_window(), plan.sense, float(t))


class TestPlans:
    def test_plans_exist(self):
        assert set(LEMMA_PLANS) == {"A1", "A2", "A3"}
        assert [p.sense for p in lemma_plan("A1")] == [Sense.NEGATIVE, Sense.POSITIVE]
        assert len(lemma_plan("A3")) == 1

    def test_unknown_lemma(self):
        with pytest.raises(LeechError):
            lemma_plan("A4")

    def test_required_numerators(self):
        assert required_numerators(["A1"]) == ("Phi1", "Phi2", "phi")
        assert "Delta2_over_q" in required_numerators(["A3"])
        assert "psiS" in required_numerators(["A2"])

    def test_short_numerator_rejected(self, small_catalog):
        numerators = small_catalog.numerators(required_numerators(["A1"]))
        with pytest.raises(LeechError):
            build_expression(lemma_plan("A1")[0], numerators, 50)


class TestFhatGap:
    def test_polynomial_is_linear(self):
        poly = fhat_gap_polynomial()
        assert poly.degree == 1
        _, pi_hi = pi_bounds()
        assert poly(Fraction(0)) == 23 - 6 * pi_hi

    def test_certified(self):
        result = certify_fhat_gap()
        assert result.ok
        assert result.branches[0].root_count == 0
        assert result.to_json()["status"] == STATUS_OK


@pytest.mark.slow
class TestLemmaCertificates:
    """Full certificates at q^50; the catalog carries one extra order for Δ²/q"""

    @pytest.fixture(scope="class")
    def numerators(self, certify_catalog):
        return certify_catalog.numerators(required_numerators(list(LEMMA_PLANS)))

    @pytest.mark.parametrize("lemma_id", ["A1", "A2", "A3"])
    def test_lemma_certifies(self, lemma_id, numerators):
        result = certify_lemma(lemma_id, 50, numerators)
        assert result.ok, [b.to_json() for b in result.failures()]
        for branch in result.branches:
            assert branch.root_count == 0
            assert branch.tail_ok

    def test_report_payload(self, numerators):
        payload = certify_lemma("A1", 50, numerators).to_json()
        assert payload["lemma_id"] == "A1"
        assert payload["order"] == 50
        assert {b["branch"] for b in payload["branches"]} == {"t_ge_1", "t_le_1"}


class TestCertResult:
    def make_branch(self, status):
        return BranchResult(
            lemma="A1", branch="t_ge_1", window=None, interval=("0", "1/23"), degree=3,
            poly_hash="abc", expected_sign="-", sample_sign="-", root_count=0 if status == STATUS_OK else 1,
            tail_constant="1/10", tail_ok=True, status=status,
        )

    def test_raise_for_status_passes_through(self):
        result = CertResult("A1", (self.make_branch(STATUS_OK),), 0.0, 50, "1e-50")
        assert result.raise_for_status() is result

    def test_raise_for_status_carries_transcript(self):
        result = CertResult("A1", (self.make_branch(STATUS_OK), self.make_branch("roots_found")), 0.0, 50, "1e-50")
        assert result.status == "failed"
        with pytest.raises(CertificationError) as info:
            result.raise_for_status()
        assert len(info.value.transcript) == 1
        assert info.value.transcript[0]["root_count"] == 1
