"""Floating point samples on surfaces, for instrumentation only.

Nothing here feeds an exact or certified count. Sample streams are generated
in a fixed order from the seed, so asking for more samples only extends the
list, which keeps every density-indexed estimate monotone.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .polynomial import MultiPoly
from .polynomial.univariate import isolate_real_roots, refine_root, restrict_to_line

_REFINE_WIDTH = Fraction(1, 2**40)


def unit_vectors(count: int, dim: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    out = np.empty((count, dim))
    filled = 0
    # draw in fixed-size blocks so prefixes agree for any count
    while filled < count:
        block = rng.standard_normal((256, dim))
        norms = np.linalg.norm(block, axis=1)
        block = block[norms > 1e-9] / norms[norms > 1e-9, None]
        take = min(count - filled, len(block))
        out[filled : filled + take] = block[:take]
        filled += take
    return out


def sphere_samples(center: Sequence, radius_sq, count: int, seed=0) -> np.ndarray:
    c = np.array([float(v) for v in center])
    return c + np.sqrt(float(radius_sq)) * unit_vectors(count, len(c), seed)


def line_shoot_samples(
    P: MultiPoly,
    count: int,
    seed=0,
    *,
    box: int = 4,
    max_attempts: int | None = None,
) -> np.ndarray:
    """Approximate zeros of ``P`` found on seeded rational lines through ``[-box, box]^d``.

    Each line's restriction is isolated exactly, refined to width ``2^-40``
    and the midpoint converted to floats. Zeros outside the box are dropped.
    """
    n = P.num_vars
    if P.is_constant():
        raise ValueError("constant polynomial has no zero set to sample")
    rng = np.random.default_rng(seed)
    attempts = max_attempts if max_attempts is not None else max(200, 20 * count)
    found: list[np.ndarray] = []
    for _ in range(attempts):
        if len(found) >= count:
            break
        base = [Fraction(int(v), 64) for v in rng.integers(-64 * box, 64 * box + 1, size=n)]
        direction = [Fraction(int(v)) for v in rng.integers(-8, 9, size=n)]
        if not any(direction):
            continue
        u = restrict_to_line(P, base, direction)
        if not u:
            found.append(np.array([float(b) for b in base]))
            continue
        for iv in isolate_real_roots(u):
            lo, hi = refine_root(u, iv, _REFINE_WIDTH)
            s = (lo + hi) / 2
            x = np.array([float(b + s * v) for b, v in zip(base, direction)])
            if np.all(np.abs(x) <= box):
                found.append(x)
    if not found:
        raise ValueError("no real zero found in the sampling box")
    return np.array(found[:count])
