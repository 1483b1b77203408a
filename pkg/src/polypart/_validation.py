"""Input validation shared by the estimators, the CLI and the library functions."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Iterable, Sequence

from .polynomial import MultiPoly, as_fraction, parse_poly

Point = tuple[Fraction, ...]


def check_points(X, dim: int | None = None, *, allow_empty: bool = True) -> list[Point]:
    """Convert an array-like of coordinates to a list of exact rational tuples.

    Accepts nested lists of ints, Fractions, ``"p/q"`` strings or floats (taken
    at their exact binary value), and 2-D numpy arrays. All rows must share one
    length; ``dim`` pins that length.
    """
    if hasattr(X, "tolist") and not isinstance(X, (list, tuple)):
        X = X.tolist()
    try:
        rows = [tuple(as_fraction(v) for v in row) for row in X]
    except TypeError as exc:
        raise TypeError(f"points must be a 2-D array-like of rationals: {exc}") from None
    if not rows:
        if not allow_empty:
            raise ValueError("at least one point is required")
        return []
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise ValueError(f"points have inconsistent dimensions {sorted(lengths)}")
    (n,) = lengths
    if n == 0:
        raise ValueError("points must have at least one coordinate")
    if dim is not None and n != dim:
        raise ValueError(f"expected points of dimension {dim}, got {n}")
    return rows


def check_vector(v, dim: int, name: str = "vector", *, nonzero: bool = False) -> Point:
    out = tuple(as_fraction(c) for c in v)
    if len(out) != dim:
        raise ValueError(f"{name} must have length {dim}, got {len(out)}")
    if nonzero and not any(out):
        raise ValueError(f"{name} must be nonzero")
    return out


def check_poly(p, num_vars: int = 3) -> MultiPoly:
    """Accept a MultiPoly or polynomial text."""
    if isinstance(p, str):
        p = parse_poly(p, num_vars)
    if not isinstance(p, MultiPoly):
        raise TypeError(f"expected a polynomial, got {type(p).__name__}")
    if p.num_vars != num_vars:
        raise ValueError(f"polynomial has {p.num_vars} variables, expected {num_vars}")
    return p


def check_slack(eps) -> Fraction:
    eps = as_fraction(eps)
    if eps < 0 or eps >= Fraction(1, 2):
        raise ValueError("slack must lie in [0, 1/2)")
    return eps


def check_nonneg_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    return int(value)


def check_families(families: Iterable[Iterable[int]], n_points: int) -> list[list[int]]:
    out = []
    for F in families:
        F = [int(i) for i in F]
        if len(set(F)) != len(F):
            raise ValueError("a family lists the same point twice")
        if any(i < 0 or i >= n_points for i in F):
            raise ValueError("family index out of range")
        out.append(F)
    return out


def same_dimension(points: Sequence[Point], num_vars: int) -> None:
    if points and len(points[0]) != num_vars:
        raise ValueError(f"points have dimension {len(points[0])}, polynomial has {num_vars} variables")
