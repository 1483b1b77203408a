"""Resultants with respect to the last variable."""

from __future__ import annotations

from .linalg import bareiss_det
from .poly import MultiPoly


def sylvester_matrix(f: MultiPoly, g: MultiPoly) -> list[list[MultiPoly]]:
    """Sylvester matrix of ``f`` and ``g`` viewed as univariate in the last variable.

    Entries are polynomials in the first ``num_vars - 1`` variables.
    """
    if f.num_vars != g.num_vars:
        raise ValueError("variable count mismatch")
    if f.num_vars < 2:
        raise ValueError("need at least two variables")
    fc = f.coefficients_in_last()
    gc = g.coefficients_in_last()
    m, n = len(fc) - 1, len(gc) - 1
    if m < 1 or n < 1:
        raise ValueError("both polynomials must have positive degree in the last variable")
    size = m + n
    zero = MultiPoly(f.num_vars - 1)
    rows = []
    # coefficients from the highest power down, as in the textbook layout
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant_wrt_last(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """``res(f, g)`` eliminating the last variable; has one variable fewer."""
    rows = sylvester_matrix(f, g)
    n = f.num_vars - 1
    return bareiss_det(
        rows,
        zero=MultiPoly(n),
        one=MultiPoly.constant(1, n),
        exact_div=lambda a, b: a / b,
        is_zero=lambda a: a.is_zero(),
    )
