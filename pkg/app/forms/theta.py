"""
Fourth powers of the Jacobi theta functions on the q^{1/2} grid.

With u = q^{1/2}:
    Θ00 = Σ u^{n²},  Θ01 = Σ (-1)^n u^{n²},  Θ10 = Σ u^{(n+1/2)²}
so Θ10⁴ = u·(Σ u^{n²+n})⁴.
"""
from app.errors import UnknownFormError
from app.series import FormalSeries, HalfExp, series_mul, series_shift

THETA_KINDS = ("00", "01", "10")


def _theta_base(kind: str, order: HalfExp) -> FormalSeries:
    limit = order.twice_value
    terms = {}
    n = 0
    while True:
        e = n * n + n if kind == "10" else n * n
        if e >= limit:
            break
        if kind == "10":
            # n and -n-1 give the same exponent
            terms[e] = terms.get(e, 0) + 2
        else:
            sign = -1 if (kind == "01" and n % 2) else 1
            terms[e] = terms.get(e, 0) + (sign if n == 0 else 2 * sign)
        n += 1
    return FormalSeries(terms, HalfExp(0), order)


def theta4(kind: str, order: HalfExp) -> FormalSeries:
    """Fourth power Θ_kind⁴, exact below `order`."""
    if kind not in THETA_KINDS:
        raise UnknownFormError(f"unknown theta kind '{kind}'")
    if order.twice_value <= 0:
        raise ValueError(f"order must be positive, got {order}")

    if kind == "10":
        base = _theta_base(kind, order - HalfExp(1))
    else:
        base = _theta_base(kind, order)
    square = series_mul(base, base)
    fourth = series_mul(square, square)
    if kind == "10":
        return series_shift(fourth, HalfExp(1))
    return fourth
