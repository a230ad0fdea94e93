"""
Recover the φ and ψ_I numerators from their defining constraints.

φ·Δ² is searched in the five-dimensional space of weight-16 depth-2
quasimodular forms; ψ_I·Δ² in the eight-dimensional space spanned by
Θ01^{4i}·Θ10^{4(7-i)}. Both solves are exact, via sympy.linsolve over
the rationals.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

import sympy

from app.errors import LeechError
from app.forms.eisenstein import eisenstein
from app.forms.numerators import evaluate_recipe
from app.forms.theta import theta4
from app.series import HalfExp, coefficient
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

PHI_BASIS: Tuple[Tuple[str, ...], ...] = (
    ("E4", "E4", "E4", "E4"),
    ("E6", "E6", "E4"),
    ("E6", "E4", "E4", "E2"),
    ("E4", "E4", "E4", "E2", "E2"),
    ("E6", "E6", "E2", "E2"),
)


@dataclass(frozen=True)
class BasisSolution:
    name: str
    labels: Tuple[str, ...]
    coefficients: Tuple[Fraction, ...]

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(zip(self.labels, self.coefficients))


def _rational(v) -> sympy.Rational:
    v = Fraction(v)
    return sympy.Rational(v.numerator, v.denominator)


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Unique solution of a (possibly overdetermined) consistent linear system.

    Raises LeechError when the system is inconsistent or underdetermined.
    """
    n = len(rows[0])
    matrix = sympy.Matrix([[_rational(v) for v in row] for row in rows])
    vector = sympy.Matrix([_rational(b) for b in rhs])
    unknowns = sympy.symbols(f"x0:{n}")
    solutions = sympy.linsolve((matrix, vector), *unknowns)
    if solutions == sympy.S.EmptySet:
        raise LeechError("linear system is inconsistent")
    (solution,) = solutions
    free = set().union(*(sympy.sympify(v).free_symbols for v in solution))
    if free:
        raise LeechError(f"linear system has a {len(free)}-dimensional solution space")
    return [Fraction(int(v.p), int(v.q)) for v in map(sympy.Rational, solution)]


def quasimodular_basis_solve(order: HalfExp = HalfExp(6)) -> BasisSolution:
    """
    Coefficients (c1..c5) of φ·Δ² over PHI_BASIS.

    Constraints: φ has no q^{-2}, q^{-1}, q^0 terms (N vanishes at q^0..q^2);
    Φ1 = -6c3·E6E4² - 12E2(c4E4³ + c5E6²) has no q^{-2} term; and the q^{-2}
    coefficient of Φ2 = -36(c4E4³ + c5E6²) is 864.
    """
    factors = {k: eisenstein(w, order) for k, w in (("E2", 2), ("E4", 4), ("E6", 6))}
    monomials = [evaluate_recipe(((Fraction(1), names),), factors) for names in PHI_BASIS]

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for n in range(3):
        rows.append([coefficient(mono, n) for mono in monomials])
        rhs.append(Fraction(0))
    rows.append([Fraction(0), Fraction(0), Fraction(-6), Fraction(-12), Fraction(-12)])
    rhs.append(Fraction(0))
    rows.append([Fraction(0), Fraction(0), Fraction(0), Fraction(-36), Fraction(-36)])
    rhs.append(Fraction(864))

    solution = solve_exact(rows, rhs)
    labels = tuple("*".join(names) for names in PHI_BASIS)
    logger.info("Solved quasimodular basis", extra={"extra": {"coefficients": [str(c) for c in solution]}})
    return BasisSolution("phi", labels, tuple(solution))


def theta_basis_solve(order: HalfExp = HalfExp(5)) -> BasisSolution:
    """
    Coefficients x_i of ψ_I·Δ² = Σ x_i·A^i·B^{7-i}, A = Θ01⁴, B = Θ10⁴.

    ψ_T·Δ² = Σ x_i (A+B)^i (-B)^{7-i} and ψ_S·Δ² = -Σ x_i B^i A^{7-i};
    requiring ψ_S + ψ_T = ψ_I coefficientwise in A^k B^{7-k}, ψ_S = O(q^{1/2})
    and x_7 = 2 pins the vector down.
    """
    size = 8
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for k in range(size):
        row = [Fraction(0)] * size
        for i in range(k, size):
            row[i] += (-1) ** (7 - i) * comb(i, k)
        row[7 - k] -= 1
        row[k] -= 1
        rows.append(row)
        rhs.append(Fraction(0))

    a = theta4("01", order)
    b = theta4("10", order)
    factors = {"A": a, "B": b}
    # ψ_S numerator monomials B^i A^{7-i}
    psi_s_monomials = [
        evaluate_recipe(((Fraction(-1), ("B",) * i + ("A",) * (7 - i)),), factors) for i in range(size)
    ]
    for e in range(order.twice_value):
        rows.append([coefficient(mono, HalfExp(e)) for mono in psi_s_monomials])
        rhs.append(Fraction(0))

    norm = [Fraction(0)] * size
    norm[7] = Fraction(1)
    rows.append(norm)
    rhs.append(Fraction(2))

    solution = solve_exact(rows, rhs)
    labels = tuple(f"A^{i}*B^{7 - i}" for i in range(size))
    logger.info("Solved theta basis", extra={"extra": {"coefficients": [str(c) for c in solution]}})
    return BasisSolution("psiI", labels, tuple(solution))
