"""Exact linear algebra: fraction-free elimination over Z, Q and Q[x]."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def bareiss_det(
    matrix: Sequence[Sequence[T]],
    *,
    zero: T,
    one: T,
    exact_div: Callable[[T, T], T],
    is_zero: Callable[[T], bool],
) -> T:
    """Determinant by Bareiss elimination over an integral domain.

    Every intermediate entry is itself a minor, so ``exact_div`` never has a
    remainder. Works for ints and for polynomials.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return one
    sgn = 1
    prev = one
    for k in range(n - 1):
        if is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not is_zero(a[i][k])), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sgn = -sgn
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = exact_div(pivot * a[i][j] - aik * a[k][j], prev)
            a[i][k] = zero
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sgn > 0 else -det


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by its denominators' lcm (rank is unchanged)."""
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in fr)) if fr else 1
        out.append([int(v * den) for v in fr])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix via fraction-free elimination over Z."""
    a = [r for r in integer_rows(rows) if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, len(a)):
            aic = a[i][col]
            row_i = a[i]
            row_r = a[r]
            if aic:
                for j in range(col, ncols):
                    row_i[j] = (p * row_i[j] - aic * row_r[j]) // prev
            else:
                for j in range(col, ncols):
                    row_i[j] = (p * row_i[j]) // prev
        prev = p
        r += 1
        if r == len(a):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space over Q (reduced row echelon form)."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis
