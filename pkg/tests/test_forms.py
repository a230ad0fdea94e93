"""
Tests for the modular-form catalog and its identities
"""
from fractions import Fraction

import pytest

from app.errors import LeechError, UnknownFormError, UnsupportedWeightError
from app.forms import (
    FORM_NAMES,
    catalog_hash,
    delta,
    delta_product,
    eisenstein,
    form_hashes,
    inject_fault,
    phi_family,
    psi_family,
    quasimodular_basis_solve,
    resolve_form_name,
    solve_exact,
    theta4,
    theta_basis_solve,
    verify_identities,
)
from app.series import HalfExp, coefficient


def coeffs(series, exps):
    return [coefficient(series, HalfExp(e)) for e in exps]


class TestBuildingBlocks:
    def test_eisenstein(self):
        order = HalfExp.from_q(3)
        assert coeffs(eisenstein(2, order), (0, 2, 4)) == [1, -24, -72]
        assert coeffs(eisenstein(4, order), (0, 2, 4)) == [1, 240, 2160]
        assert coeffs(eisenstein(6, order), (0, 2, 4)) == [1, -504, -16632]

    def test_unsupported_weight(self):
        with pytest.raises(UnsupportedWeightError):
            eisenstein(8, HalfExp(4))

    def test_delta(self):
        d = delta(HalfExp.from_q(4))
        assert d.min_exp == HalfExp(2)
        assert coeffs(d, (2, 4, 6)) == [1, -24, 252]

    def test_delta_product_matches_eisenstein(self):
        order = HalfExp.from_q(12)
        d = delta_product(order)
        assert coeffs(d, (2, 4, 6, 8, 10)) == [1, -24, 252, -1472, 4830]
        assert d.terms == delta(order).terms

    def test_theta_fourth_powers(self):
        order = HalfExp(6)
        assert coeffs(theta4("00", order), range(6)) == [1, 8, 24, 32, 24, 48]
        assert coeffs(theta4("01", order), range(6)) == [1, -8, 24, -32, 24, -48]
        assert coeffs(theta4("10", order), range(6)) == [0, 16, 0, 64, 0, 96]

    def test_unknown_theta(self):
        with pytest.raises(UnknownFormError):
            theta4("11", HalfExp(4))


class TestNamedForms:
    def test_phi_expansion(self, small_catalog):
        phi = small_catalog.body("phi")
        assert phi.min_exp == HalfExp(2)
        assert coeffs(phi, (2, 4, 6)) == [-3657830400, -314573414400, -13716864000000]

    def test_phi1_body(self, small_catalog):
        entry = small_catalog["Phi1"]
        assert (entry.pi_power, entry.i_power) == (-1, 1)
        assert coeffs(entry.body, (-2, 0, 2)) == [725760, 113218560, 19691320320]

    def test_phi2_body(self, small_catalog):
        entry = small_catalog["Phi2"]
        assert (entry.pi_power, entry.i_power) == (-2, 0)
        assert coeffs(entry.body, (-4, -2, 0, 2)) == [864, 2218752, 223140096, 23368117248]

    def test_psi_family(self, small_catalog):
        assert coeffs(small_catalog.body("psiI"), (-4, -2, 0, 1, 2, 3)) == [
            2, -464, 172128, -3670016, 47238464, -459276288,
        ]
        assert coeffs(small_catalog.body("psiS"), (0, 1, 2, 3)) == [0, -7340032, 0, -918552576]
        assert coeffs(small_catalog.body("psiT"), (-4, -2, 0, 1)) == [2, -464, 172128, 3670016]

    def test_families_match_catalog(self, small_catalog):
        order = small_catalog.order
        phis = phi_family(order)
        psis = psi_family(order)
        assert phis["phi"] == small_catalog.body("phi")
        assert phis["Phi1"].body == small_catalog.body("Phi1")
        assert psis["psiS"] == small_catalog.body("psiS")

    def test_catalog_order(self, small_catalog):
        assert small_catalog.q_order == 3
        assert set(small_catalog) == set(FORM_NAMES)

    def test_resolve_aliases(self):
        assert resolve_form_name("phi1") == "Phi1"
        assert resolve_form_name("delta") == "Delta"
        with pytest.raises(UnknownFormError):
            resolve_form_name("nosuchform")


class TestIdentities:
    def test_all_pass_on_small_window(self, small_catalog):
        report = verify_identities(small_catalog)
        assert report.passed
        assert report.failures() == {}

    def test_all_pass_at_default_order(self, catalog):
        report = verify_identities(catalog)
        assert report.passed, report.to_json()

    def test_perturbed_psi_s_fails_at_half(self, small_catalog):
        faulty = inject_fault(small_catalog, "psiS", 1)
        report = verify_identities(faulty)
        assert not report.passed
        assert not report["psi_sum"].passed
        assert report["psi_sum"].first_offending == HalfExp(1)
        assert report["jacobi"].passed

    def test_eisenstein_fault_breaks_delta_product_check(self, small_catalog):
        faulty = inject_fault(small_catalog, "E4", 4)
        report = verify_identities(faulty)
        assert report["delta"].passed
        assert not report["delta_eisenstein"].passed
        assert report["delta_eisenstein"].first_offending == HalfExp(4)

    def test_fault_changes_hashes(self, small_catalog):
        faulty = inject_fault(small_catalog, "E4", 6)
        assert catalog_hash(faulty) != catalog_hash(small_catalog)
        changed = {k for k, v in form_hashes(faulty).items() if v != form_hashes(small_catalog)[k]}
        assert changed == {"E4"}

    def test_fault_above_truncation_rejected(self, small_catalog):
        with pytest.raises(ValueError):
            inject_fault(small_catalog, "E4", 100)

    def test_hash_is_deterministic(self, small_catalog):
        assert catalog_hash(small_catalog) == catalog_hash(small_catalog)


class TestBasisSolves:
    def test_quasimodular_basis(self):
        solution = quasimodular_basis_solve()
        assert solution.coefficients == tuple(Fraction(c) for c in (25, -49, 48, -49, 25))

    def test_theta_basis(self):
        solution = theta_basis_solve()
        assert solution.coefficients == tuple(Fraction(c) for c in (0, 0, 0, 0, 0, 7, 7, 2))

    def test_solve_exact_overdetermined(self):
        rows = [[1, 1], [1, -1], [2, 0]]
        assert solve_exact(rows, [3, 1, 4]) == [Fraction(2), Fraction(1)]

    def test_solve_exact_inconsistent(self):
        with pytest.raises(LeechError, match="inconsistent"):
            solve_exact([[1, 1], [1, 1]], [1, 2])

    def test_solve_exact_underdetermined(self):
        with pytest.raises(LeechError, match="1-dimensional"):
            solve_exact([[1, 1], [2, 2]], [1, 2])
