"""Closed-form incidence bounds, all with unit constants."""

from __future__ import annotations


def _check(m, n):
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")


def kst_threshold(m, n, s: int, t: int) -> float:
    """Edge bound for an m x n bipartite graph with no K_{s,t} (smaller of the two orientations)."""
    _check(m, n)
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    return min(n * m ** (1 - 1 / s) + m, m * n ** (1 - 1 / t) + n)


def canham_bounds(m, n, k: int) -> tuple[float, float]:
    """``(m n^(1-1/k) + n, m^(2/3) n + m)`` for m points and n surfaces."""
    _check(m, n)
    if k < 3:
        raise ValueError("k must be at least 3")
    return m * n ** (1 - 1 / k) + n, m ** (2 / 3) * n + m


def choose_D(m, n, k: int) -> float:
    if m <= 0 or n <= 0:
        raise ValueError("m and n must be positive")
    return m ** (k / (3 * k - 1)) * n ** (-1 / (3 * k - 1))


def choose_E(pj_count, n, Dj, k: int) -> float:
    if pj_count <= 0 or n <= 0 or Dj <= 0:
        raise ValueError("arguments must be positive")
    return (pj_count**k / (n * Dj**k)) ** (1 / (2 * k - 1))


def theoretical_bound(m, n, k: int = 3) -> float:
    """``m^(2k/(3k-1)) n^((3k-3)/(3k-1)) + m + n``."""
    _check(m, n)
    if k < 3:
        raise ValueError("k must be at least 3")
    return m ** (2 * k / (3 * k - 1)) * n ** ((3 * k - 3) / (3 * k - 1)) + m + n
