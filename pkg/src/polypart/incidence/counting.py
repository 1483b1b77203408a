"""Exact point-surface incidences and unit-distance pairs."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .._validation import check_points
from ..polynomial import signs_at
from ..surfaces import Surface

_INT64_SAFE = 2**29


def _scaled(rows: Sequence[Sequence[Fraction]], L: int) -> list[list[int]]:
    return [[int(v * L) for v in r] for r in rows]


def _common_den(*groups) -> int:
    L = 1
    for g in groups:
        for row in g:
            for v in row:
                L = lcm(L, v.denominator)
    return L


def _as_array(rows: list[list[int]]):
    top = max((abs(v) for r in rows for v in r), default=0)
    return np.array(rows, dtype=np.int64) if top < _INT64_SAFE else None


def incidence_lists(points, surfaces: Sequence[Surface]) -> list[list[int]]:
    """For each surface, the sorted indices of the points lying on it (exact)."""
    pts = check_points(points)
    out: list[list[int]] = [[] for _ in surfaces]
    if not pts or not surfaces:
        return out
    spheres = [j for j, S in enumerate(surfaces) if S.kind == "sphere"]
    if spheres:
        L = _common_den(pts, [surfaces[j].center for j in spheres])
        P = _scaled(pts, L)
        C = _scaled([surfaces[j].center for j in spheres], L)
        Pa, Ca = _as_array(P), _as_array(C)
        for row, j in enumerate(spheres):
            target = surfaces[j].radius_sq * L * L
            if target.denominator != 1:
                continue
            target = int(target)
            if Pa is not None and Ca is not None:
                d2 = ((Pa - Ca[row]) ** 2).sum(axis=1)
                out[j] = np.nonzero(d2 == target)[0].tolist()
            else:
                c = C[row]
                out[j] = [i for i, p in enumerate(P) if sum((a - b) ** 2 for a, b in zip(p, c)) == target]
    for j, S in enumerate(surfaces):
        if S.kind != "sphere":
            out[j] = [i for i, s in enumerate(signs_at(S.defining_poly, pts)) if s == 0]
    return out


def incidences_bruteforce(points, surfaces: Sequence[Surface]) -> tuple[int, list[tuple[int, int]]]:
    """Count pairs ``(point index, surface index)`` with the point exactly on the surface."""
    lists = incidence_lists(points, surfaces)
    pairs = sorted((i, j) for j, L in enumerate(lists) for i in L)
    return len(pairs), pairs


def count_incidences(points, surfaces: Sequence[Surface]) -> int:
    return sum(len(L) for L in incidence_lists(points, surfaces))


def unit_distance_pairs(points) -> int:
    """Unordered pairs at squared distance exactly 1."""
    pts = check_points(points)
    m = len(pts)
    if m < 2:
        return 0
    L = _common_den(pts)
    P = _scaled(pts, L)
    target = L * L
    arr = _as_array(P)
    total = 0
    if arr is not None:
        for i in range(m - 1):
            d2 = ((arr[i + 1 :] - arr[i]) ** 2).sum(axis=1)
            total += int(np.count_nonzero(d2 == target))
        return total
    for i in range(m):
        for j in range(i + 1, m):
            if sum((a - b) ** 2 for a, b in zip(P[i], P[j])) == target:
                total += 1
    return total


def unit_distance_report(points) -> dict:
    pts = check_points(points)
    m = len(pts)
    pairs = unit_distance_pairs(pts)
    ref = m**1.5
    return {"m": m, "unit_distance_pairs": pairs, "m_pow_3_2": ref, "ratio": pairs / ref if m else 0.0}
