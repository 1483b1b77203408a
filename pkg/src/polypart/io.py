"""JSON file formats for points, surfaces and polynomial lists.

Rationals are written as ``"p/q"`` (or ``"p"``) strings so nothing is rounded.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ._validation import check_points
from .polynomial import MultiPoly, parse_poly, to_text
from .surfaces import Surface


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def points_to_json(points) -> dict:
    pts = check_points(points)
    return {"dim": len(pts[0]) if pts else 3, "points": [[frac_str(v) for v in p] for p in pts]}


def points_from_json(obj) -> list[tuple[Fraction, ...]]:
    if isinstance(obj, list):
        return check_points(obj)
    if "points" not in obj:
        raise ValueError('points file needs a "points" array')
    return check_points(obj["points"], obj.get("dim"))


def surfaces_to_json(surfaces: Sequence[Surface]) -> dict:
    out: dict = {}
    spheres = [S for S in surfaces if S.kind == "sphere"]
    general = [S for S in surfaces if S.kind != "sphere"]
    if spheres or not general:
        out["spheres"] = [
            {"center": [frac_str(v) for v in S.center], "radius_sq": frac_str(S.radius_sq)} for S in spheres
        ]
    if general:
        out["polys"] = [to_text(S.defining_poly) for S in general]
    return out


def surfaces_from_json(obj, num_vars: int = 3) -> list[Surface]:
    out = []
    for s in obj.get("spheres", []):
        out.append(Surface.sphere(s["center"], s["radius_sq"]))
    for text in obj.get("polys", []):
        out.append(Surface.general(parse_poly(text, num_vars)))
    return out


def polys_from_json(obj, num_vars: int = 3) -> list[MultiPoly]:
    items = obj["polys"] if isinstance(obj, dict) else obj
    return [parse_poly(t, num_vars) for t in items]


def load_json(path):
    if str(path) == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path=None) -> None:
    text = json.dumps(obj, indent=2, default=_default)
    if path is None or str(path) == "-":
        sys.stdout.write(text + "\n")
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text + "\n")


def _default(o):
    if isinstance(o, Fraction):
        return frac_str(o)
    if isinstance(o, MultiPoly):
        return to_text(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def read_points(path):
    return points_from_json(load_json(path))


def read_surfaces(path, num_vars: int = 3):
    return surfaces_from_json(load_json(path), num_vars)


def write_points(points, path) -> None:
    dump_json(points_to_json(points), path)


def write_surfaces(surfaces, path) -> None:
    dump_json(surfaces_to_json(surfaces), path)
