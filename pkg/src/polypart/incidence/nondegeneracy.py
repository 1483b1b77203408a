"""Checks for the non-degeneracy hypotheses on point-surface configurations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, lcm
from typing import Sequence

from ..polynomial import rank
from ..surfaces import Surface
from .counting import incidence_lists


@dataclass(frozen=True)
class NondegeneracyParams:
    k: int = 3
    C: int = 2

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be at least 3")
        if self.C < 1:
            raise ValueError("C must be at least 1")


class FeasibilityGuardExceeded(RuntimeError):
    pass


@dataclass
class NondegeneracyReport:
    common_circle_triples: list[tuple[int, int, int]] = field(default_factory=list)
    k_point_violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    triple_intersection_violations: list[tuple[tuple[int, int, int], int]] = field(default_factory=list)
    duplicate_pairs: list[tuple[int, int]] = field(default_factory=list)
    max_triple_intersection: int = 0
    smoothness_checked: bool = False

    @property
    def ok(self) -> bool:
        return not (
            self.common_circle_triples
            or self.k_point_violations
            or self.triple_intersection_violations
            or self.duplicate_pairs
        )

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "common_circle_triples": [list(t) for t in self.common_circle_triples],
            "k_point_violations": [{"points": list(p), "surfaces": c} for p, c in self.k_point_violations],
            "triple_intersection_violations": [{"surfaces": list(t), "points": c} for t, c in self.triple_intersection_violations],
            "duplicate_pairs": [list(p) for p in self.duplicate_pairs],
            "max_triple_intersection": self.max_triple_intersection,
            "smoothness_checked": self.smoothness_checked,
        }


def _pencil_vector(S: Surface) -> list[Fraction]:
    # |x|^2 - 2 c.x + (|c|^2 - r^2): spheres in one pencil give collinear (c, |c|^2 - r^2)
    c = list(S.center)
    return c + [sum(v * v for v in c) - S.radius_sq]


def share_common_circle(a: Surface, b: Surface, c: Surface) -> bool:
    """Exact test that three distinct spheres contain one common real circle."""
    if len({a, b, c}) < 3:
        return False
    va, vb, vc = _pencil_vector(a), _pencil_vector(b), _pencil_vector(c)
    if rank([[x - y for x, y in zip(vb, va)], [x - y for x, y in zip(vc, va)]]) > 1:
        return False
    # collinear: one pencil; its base locus is a real circle iff two of them cross transversally
    for s, t in ((a, b), (a, c), (b, c)):
        if s.center != t.center:
            delta2 = sum((x - y) ** 2 for x, y in zip(s.center, t.center))
            A = delta2 - s.radius_sq - t.radius_sq
            return A * A < 4 * s.radius_sq * t.radius_sq
    return False


def check_nondegeneracy(
    surfaces: Sequence[Surface],
    points,
    params: NondegeneracyParams = NondegeneracyParams(),
    *,
    guard: int = 2_000_000,
) -> NondegeneracyReport:
    """Flag common-circle sphere triples, k points on more than C surfaces,
    triples of surfaces sharing more than C input points, and duplicate surfaces.

    The triple-intersection check only sees input points, so it bounds
    ``|S ∩ S' ∩ S''|`` from below. Raises :class:`FeasibilityGuardExceeded`
    when the brute-force enumeration would exceed ``guard`` steps.
    """
    rep = NondegeneracyReport()
    n = len(surfaces)
    seen: dict[Surface, int] = {}
    for j, S in enumerate(surfaces):
        key = S if S.kind == "sphere" else Surface.general(S.defining_poly.primitive())
        if key in seen:
            rep.duplicate_pairs.append((seen[key], j))
        else:
            seen[key] = j
    spheres = [j for j, S in enumerate(surfaces) if S.kind == "sphere"]
    # only triples with collinear centers can share a circle; group by line first
    for a, b, c in _collinear_center_triples([surfaces[j] for j in spheres]):
        ja, jb, jc = spheres[a], spheres[b], spheres[c]
        if share_common_circle(surfaces[ja], surfaces[jb], surfaces[jc]):
            rep.common_circle_triples.append((ja, jb, jc))
    lists = incidence_lists(points, surfaces) if n else []
    k = params.k
    work = sum(comb(len(L), k) for L in lists)
    if work > guard:
        raise FeasibilityGuardExceeded(f"{work} point subsets exceed the guard")
    counts: Counter = Counter()
    for L in lists:
        counts.update(combinations(L, k))
    rep.k_point_violations = sorted((T, c) for T, c in counts.items() if c > params.C)
    by_point: dict[int, list[int]] = {}
    for j, L in enumerate(lists):
        for i in L:
            by_point.setdefault(i, []).append(j)
    work = sum(comb(len(v), 3) for v in by_point.values())
    if work > guard:
        raise FeasibilityGuardExceeded(f"{work} surface triples exceed the guard")
    triples: Counter = Counter()
    for v in by_point.values():
        triples.update(combinations(v, 3))
    rep.max_triple_intersection = max(triples.values(), default=0)
    rep.triple_intersection_violations = sorted((T, c) for T, c in triples.items() if c > params.C)
    return rep


def _direction_key(u) -> tuple[int, ...] | None:
    if not any(u):
        return None
    den = lcm(*(v.denominator for v in u))
    ints = [int(v * den) for v in u]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    return tuple(-v for v in ints) if first < 0 else tuple(ints)


def _collinear_center_triples(spheres: Sequence[Surface]):
    """Triples ``a < b < c`` with distinct collinear centers, found by hashing directions from ``a``."""
    m = len(spheres)
    centers = [S.center for S in spheres]
    for a in range(m):
        groups: dict[tuple[int, ...], list[int]] = {}
        for b in range(a + 1, m):
            key = _direction_key([x - y for x, y in zip(centers[b], centers[a])])
            if key is not None:
                groups.setdefault(key, []).append(b)
        for members in groups.values():
            yield from ((a, b, c) for b, c in combinations(members, 2))
