"""Command line interface: ``polypart <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import configgen, io
from .incidence import (
    NondegeneracyParams,
    PipelineConfig,
    count_incidences,
    run_pipeline,
    theoretical_bound,
    unit_distance_report,
)
from .partition import build_partition
from .polynomial import parse_poly, to_text
from .real_ideal import realify_with_report
from .surface_partition import build_surface_partition


def _frac(text: str) -> Fraction:
    return Fraction(text)


def cmd_gen(args) -> int:
    spec = json.loads(args.spec) if args.spec.lstrip().startswith("{") else io.load_json(args.spec)
    points, surfaces = configgen.generate(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_points(points, out / "points.json")
    io.write_surfaces(surfaces, out / "surfaces.json")
    print(f"wrote {len(points)} points and {len(surfaces)} surfaces to {out}", file=sys.stderr)
    return 0


def cmd_partition(args) -> int:
    pts = io.read_points(args.points)
    t0 = time.perf_counter()
    res = build_partition(pts, args.rounds, args.slack, args.seed, degree_constant=args.degree_constant)
    report = res.to_dict()
    report["runtime_s"] = time.perf_counter() - t0
    io.dump_json(report, args.out)
    return 0 if res.certified else 2


def cmd_surface_partition(args) -> int:
    pts = io.read_points(args.points)
    P = parse_poly(args.base_poly, len(pts[0]) if pts else 3)
    res = build_surface_partition(
        P,
        pts,
        args.E,
        args.rho,
        args.slack,
        args.seed,
        assume_real_irreducible=args.assume_real_irreducible is not None,
        justification=args.assume_real_irreducible or "",
    )
    io.dump_json(res.to_dict(), args.out)
    return 0 if res.certified else 2


def cmd_realify(args) -> int:
    polys = io.polys_from_json(io.load_json(args.polys))
    direction = [Fraction(v) for v in args.direction.split(",")] if args.direction else None
    out, log = realify_with_report(polys, args.seed, direction)
    report = {
        "input": [to_text(p) for p in polys],
        "output": [to_text(p) for p in out],
        "degree_sum_in": sum(p.degree() for p in polys),
        "degree_sum_out": sum(p.degree() for p in out),
        "steps": [
            {
                "poly": to_text(e.original),
                "verdict": e.verdict.to_dict(),
                "direction": [str(v) for v in e.direction] if e.direction else None,
                "replacements": [to_text(p) for p in e.replacements],
                "flags": e.flags,
            }
            for e in log
        ],
    }
    io.dump_json(report, args.out)
    return 0


def cmd_incidences(args) -> int:
    pts = io.read_points(args.points)
    surfaces = io.read_surfaces(args.surfaces, len(pts[0]) if pts else 3)
    cfg = PipelineConfig(c=args.c, slack=args.slack, seed=args.seed, waive_nondegeneracy=args.waive_nondegeneracy)
    rep = run_pipeline(pts, surfaces, NondegeneracyParams(args.k, args.C), cfg)
    io.dump_json(rep.to_dict(), args.out)
    return 0


def cmd_unit_distances(args) -> int:
    io.dump_json(unit_distance_report(io.read_points(args.points)), args.out)
    return 0


def sweep_rows(families, sizes, k: int = 3, seed: int = 0):
    """Rows ``(family, m, n, measured, bound, ratio)`` for unit spheres centered at the points."""
    for fam in families:
        for size in sizes:
            if fam == "grid":
                side = round(size ** (1 / 3))
                if side**3 != size:
                    continue
                pts = configgen.grid(side)
            elif fam == "random":
                # lattice box about twice as large as the point count, so unit distances are common
                half = 1
                while (2 * half + 1) ** 3 < 2 * size:
                    half += 1
                pts = configgen.random_box(size, seed, half_width=half, denominator=1)
            else:
                raise ValueError(f"unknown family {fam!r}")
            surfaces = configgen.unit_spheres_at(pts)
            m, n = len(pts), len(surfaces)
            measured = count_incidences(pts, surfaces)
            bound = theoretical_bound(m, n, k)
            yield fam, m, n, measured, bound, measured / bound


def cmd_verify_bound(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    families = args.families.split(",")
    fh = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    worst = 0.0
    try:
        w = csv.writer(fh)
        w.writerow(["family", "m", "n", "measured", "bound", "ratio"])
        for row in sweep_rows(families, sizes, args.k, args.seed):
            worst = max(worst, row[-1])
            w.writerow([row[0], row[1], row[2], row[3], f"{row[4]:.6g}", f"{row[5]:.6g}"])
    finally:
        if fh is not sys.stdout:
            fh.close()
    print(f"max ratio {worst:.4g} (limit {args.max_ratio})", file=sys.stderr)
    return 0 if worst <= args.max_ratio else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polypart", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate points and surfaces from a spec")
    g.add_argument("--spec", required=True, help="JSON file, or an inline JSON object")
    g.add_argument("--out", required=True, help="output directory for points.json and surfaces.json")
    g.set_defaults(func=cmd_gen)

    g = sub.add_parser("partition", help="polynomial partition of a point set")
    g.add_argument("--points", required=True)
    g.add_argument("--rounds", type=int, required=True)
    g.add_argument("--slack", type=_frac, default=Fraction(1, 10))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--degree-constant", type=int, default=2)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_partition)

    g = sub.add_parser("surface-partition", help="partition points lying on Z(P)")
    g.add_argument("--base-poly", required=True)
    g.add_argument("--points", required=True)
    g.add_argument("--E", type=int, required=True)
    g.add_argument("--rho", type=_frac, default=Fraction(1, 4))
    g.add_argument("--slack", type=_frac, default=Fraction(1, 10))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--assume-real-irreducible", metavar="JUSTIFICATION", default=None)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_surface_partition)

    g = sub.add_parser("realify", help="replace non-real members of a polynomial family")
    g.add_argument("--polys", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--direction", help="fixed direction, e.g. 1,2,0")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_realify)

    g = sub.add_parser("incidences", help="two-level incidence pipeline")
    g.add_argument("--points", required=True)
    g.add_argument("--surfaces", required=True)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--C", type=int, default=2)
    g.add_argument("--c", type=_frac, default=Fraction(1))
    g.add_argument("--slack", type=_frac, default=Fraction(1, 10))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--waive-nondegeneracy", action="store_true")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_incidences)

    g = sub.add_parser("unit-distances", help="count unit-distance pairs")
    g.add_argument("--points", required=True)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_unit_distances)

    g = sub.add_parser("verify-bound", help="sweep configuration families and emit CSV")
    g.add_argument("--families", default="grid,random")
    g.add_argument("--sizes", default="27,64,125,216,343,512,729,1000")
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-ratio", type=float, default=10.0)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_verify_bound)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
