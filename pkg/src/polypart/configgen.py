"""Deterministic point and surface generators.

Every generator returns exact rationals. Random kinds draw integers from a
seeded generator and scale them, so identical specs give identical output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ._validation import check_points
from .surfaces import Surface

KINDS = (
    "grid",
    "random_box",
    "sphere_rational_points",
    "unit_spheres_at",
    "random_spheres",
    "degenerate_circle_pencil",
    "octants_24",
    "plane_8",
)
ALIASES = {"paper_example_1": "octants_24", "paper_example_2": "plane_8"}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        d = dict(d)
        kind = d.pop("kind")
        seed = d.pop("seed", 0)
        params = d.pop("params", {})
        params.update(d)
        return cls(kind, params, seed)


def grid(n_per_side: int, spacing=1, dim: int = 3) -> list[tuple[Fraction, ...]]:
    if n_per_side < 0:
        raise ValueError("n_per_side must be nonnegative")
    s = Fraction(spacing)
    return [tuple(s * v for v in p) for p in product(range(n_per_side), repeat=dim)]


def random_box(m: int, seed: int = 0, *, half_width: int = 1, denominator: int = 1000, dim: int = 3):
    """``m`` distinct points of ``(1/denominator) Z^dim`` inside ``[-half_width, half_width]^dim``."""
    span = half_width * denominator
    if m > (2 * span + 1) ** dim:
        raise ValueError("box holds fewer lattice points than requested")
    rng = random.Random(seed)
    seen: set = set()
    out = []
    while len(out) < m:
        p = tuple(Fraction(rng.randint(-span, span), denominator) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def sphere_rational_points(m: int, seed: int = 0, *, center=(0, 0, 0), radius: int = 1, height: int = 20):
    """Distinct rational points on a sphere via inverse stereographic projection.

    ``(a, b) -> (2a, 2b, a^2 + b^2 - 1) / (a^2 + b^2 + 1)`` lands exactly on the
    unit sphere; it is then scaled by ``radius`` and moved to ``center``.
    """
    rng = random.Random(seed)
    c = tuple(Fraction(v) for v in center)
    seen: set = set()
    out = []
    tries = 0
    while len(out) < m:
        tries += 1
        if tries > 1000 * (m + 10):
            raise ValueError("could not find enough distinct points; raise height")
        a = Fraction(rng.randint(-height, height), rng.randint(1, height))
        b = Fraction(rng.randint(-height, height), rng.randint(1, height))
        q = a * a + b * b + 1
        p = tuple(ci + radius * v for ci, v in zip(c, (2 * a / q, 2 * b / q, (q - 2) / q)))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def unit_spheres_at(points) -> list[Surface]:
    return [Surface.sphere(p, 1) for p in check_points(points)]


def random_spheres(n: int, seed: int = 0, *, points=(), through_points: bool = True, half_width: int = 3):
    """Spheres with lattice centers; each passes through a seeded choice of the given points if any."""
    rng = random.Random(seed)
    pts = check_points(points)
    out: list[Surface] = []
    seen: set = set()
    while len(out) < n:
        c = tuple(Fraction(rng.randint(-2 * half_width, 2 * half_width), 2) for _ in range(3))
        if through_points and pts:
            p = pts[rng.randrange(len(pts))]
            r2 = sum((a - b) ** 2 for a, b in zip(p, c))
        else:
            r2 = Fraction(rng.randint(1, 4 * half_width**2), 4)
        if r2 <= 0:
            continue
        S = Surface.sphere(c, r2)
        if S not in seen:
            seen.add(S)
            out.append(S)
    return out


def degenerate_circle_pencil() -> list[Surface]:
    """Three spheres through the circle ``x3 = 1, x1^2 + x2^2 = 1``."""
    return [
        Surface.sphere((0, 0, 0), 2),
        Surface.sphere((0, 0, 1), 1),
        Surface.sphere((0, 0, 2), 2),
    ]


def octants_24():
    """Eight points on the plane ``x1 = 0`` and sixteen off it, two per open octant."""
    pts = []
    for s in (1, 2):
        pts.extend((0, s * a, s * b) for a in (1, -1) for b in (1, -1))
    for s in (1, 2):
        pts.extend((s * a, s * b, s * c) for a in (1, -1) for b in (1, -1) for c in (1, -1))
    return [tuple(Fraction(v) for v in p) for p in pts]


def plane_8():
    """The eight on-plane points of :func:`octants_24`."""
    return [p for p in octants_24() if p[0] == 0]


def generate(spec: GeneratorSpec | dict):
    """Return ``(points, surfaces)`` for a spec."""
    if isinstance(spec, dict):
        spec = GeneratorSpec.from_dict(spec)
    kind = ALIASES.get(spec.kind, spec.kind)
    p = dict(spec.params)
    try:
        if kind == "grid":
            return grid(int(p.get("n_per_side", 3)), Fraction(str(p.get("spacing", 1)))), []
        if kind == "random_box":
            return random_box(
                int(p["m"]), spec.seed, half_width=int(p.get("half_width", 1)), denominator=int(p.get("denominator", 1000))
            ), []
        if kind == "sphere_rational_points":
            return sphere_rational_points(int(p["m"]), spec.seed), []
        if kind == "unit_spheres_at":
            src = p.get("points")
            if isinstance(src, dict):
                pts, _ = generate(src)
            else:
                pts = check_points(src or [])
            return pts, unit_spheres_at(pts)
        if kind == "random_spheres":
            src = p.get("points")
            pts = generate(src)[0] if isinstance(src, dict) else check_points(src or [])
            return pts, random_spheres(int(p["n"]), spec.seed, points=pts, through_points=bool(p.get("through_points", True)))
        if kind == "degenerate_circle_pencil":
            return [], degenerate_circle_pencil()
        if kind == "octants_24":
            return octants_24(), []
        if kind == "plane_8":
            return plane_8(), []
    except KeyError as exc:
        raise ValueError(f"generator {kind!r} needs parameter {exc.args[0]!r}") from None
    raise ValueError(f"unknown generator kind {spec.kind!r}; expected one of {KINDS}")
