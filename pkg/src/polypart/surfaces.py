"""Algebraic surfaces with an exact membership predicate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import MultiPoly, as_fraction, evaluate


def sphere_poly(center: Sequence[Fraction], radius_sq: Fraction) -> MultiPoly:
    n = len(center)
    p = MultiPoly.constant(-radius_sq, n)
    for i, c in enumerate(center):
        lin = MultiPoly.variable(i, n) - c
        p = p + lin * lin
    return p


@dataclass(frozen=True)
class Surface:
    """A sphere ``|x - center|^2 = radius_sq`` or the zero set of a general polynomial."""

    kind: str
    defining_poly: MultiPoly
    center: tuple[Fraction, ...] | None = None
    radius_sq: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("sphere", "general"):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        if self.defining_poly.is_constant():
            raise ValueError("defining polynomial must be nonconstant")
        if self.kind == "sphere" and (self.radius_sq is None or self.radius_sq <= 0):
            raise ValueError("sphere radius_sq must be positive")

    @classmethod
    def sphere(cls, center, radius_sq=1) -> "Surface":
        c = tuple(as_fraction(v) for v in center)
        r = as_fraction(radius_sq)
        if r <= 0:
            raise ValueError("sphere radius_sq must be positive")
        return cls("sphere", sphere_poly(c, r), c, r)

    @classmethod
    def general(cls, poly: MultiPoly) -> "Surface":
        return cls("general", poly)

    @property
    def dim(self) -> int:
        return self.defining_poly.num_vars

    @property
    def degree(self) -> int:
        return self.defining_poly.degree()

    def contains(self, point) -> bool:
        if self.kind == "sphere":
            x = [as_fraction(v) for v in point]
            if len(x) != len(self.center):
                raise ValueError("dimension mismatch")
            return sum((a - b) ** 2 for a, b in zip(x, self.center)) == self.radius_sq
        return evaluate(self.defining_poly, point) == 0

    def __str__(self) -> str:
        if self.kind == "sphere":
            c = ", ".join(str(v) for v in self.center)
            return f"sphere(center=({c}), radius_sq={self.radius_sq})"
        return f"surface({self.defining_poly})"
