"""Acceptance criteria 1-10. Each test records a PASS/FAIL line shown in the terminal summary."""

import csv
import math
import time
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from conftest import P, naive_incidences, naive_unit_pairs
from polypart import (
    FactoredPoly,
    NondegeneracyParams,
    PipelineConfig,
    Surface,
    assign_cells,
    build_partition,
    build_surface_partition,
    check_nondegeneracy,
    configgen,
    graded_slice,
    hat_poly,
    incidences_bruteforce,
    is_real_principal,
    realify_family,
    realizations_on_surface,
    run_pipeline,
    to_text,
    unit_distance_report,
)
from polypart.cli import main
from polypart.polynomial import MultiPoly, evaluate


def test_criterion_1_octant_cells(record):
    t0 = time.perf_counter()
    pts = configgen.octants_24()
    cells, residual = assign_cells(pts, [P("x1"), P("x2"), P("x3")])
    dt = time.perf_counter() - t0
    ok = len(cells) == 8 and all(len(v) == 2 for v in cells.values()) and len(residual) == 8 and dt < 1
    record(1, ok, f"8 cells x 2, residual {len(residual)}, {dt:.3f}s")
    assert ok


def test_criterion_2_plane_realizations(record):
    t0 = time.perf_counter()
    pts = configgen.plane_8()
    cells, boundary = realizations_on_surface(pts, P("x1"), [P("x2"), P("x3")])
    part = build_surface_partition(P("x1"), pts, 2)
    dt = time.perf_counter() - t0
    ok = (
        sorted(len(v) for v in cells.values()) == [2, 2, 2, 2]
        and not boundary
        and part.certified
        and part.t <= math.ceil(math.log2(1 * 2**2)) + 2
        and part.total_degree <= 16
        and part.max_bucket <= 2
        and dt < 5
    )
    record(2, ok, f"t={part.t} sum deg={part.total_degree} max bucket={part.max_bucket}, {dt:.2f}s")
    assert ok


def test_criterion_3_partition_guarantee(record):
    t0 = time.perf_counter()
    pts = configgen.random_box(512, seed=7)
    res = build_partition(pts, 7, Fraction(1, 10), seed=7)
    dt = time.perf_counter() - t0
    total = sum(len(v) for v in res.pieces.values()) + len(res.residual)
    cap = math.ceil(512 * Fraction(6, 10) ** 7)
    ok = res.certified and cap == 15 and res.max_piece <= cap and total == 512 and dt < 120
    record(3, ok, f"max piece {res.max_piece} <= {cap}, conserved {total}, {dt:.1f}s")
    assert ok


def _random_configs():
    rng = np.random.default_rng(2024)
    for seed in range(20):
        m, n = (int(v) for v in rng.integers(10, 201, size=2))
        pts = configgen.random_box(m, seed, half_width=2, denominator=2)
        yield seed, pts, configgen.random_spheres(n, seed, points=pts)


def test_criterion_4_incidence_exactness(record):
    pts = configgen.grid(3)
    spheres = configgen.unit_spheres_at(pts)
    rep = run_pipeline(pts, spheres)
    grid_ok = rep.total_incidences == rep.brute_force_total == naive_incidences(pts, spheres) == 108
    ok, waived = grid_ok, 0
    for seed, pts, spheres in _random_configs():
        assert len(pts) <= 200 and len(spheres) <= 200
        flagged = not check_nondegeneracy(spheres, pts, NondegeneracyParams()).ok
        waived += flagged
        rep = run_pipeline(pts, spheres, partition_config=PipelineConfig(seed=seed, waive_nondegeneracy=flagged))
        ok = ok and rep.total_incidences == incidences_bruteforce(pts, spheres)[0] == naive_incidences(pts, spheres)
    record(4, ok, f"grid 108, 20 random configs exact ({waived} with the degeneracy waiver)")
    assert ok


def test_criterion_5_unit_distances(record):
    out = []
    for side, expect in ((3, 54), (4, 144)):
        pts = configgen.grid(side)
        rep = unit_distance_report(pts)
        closed = 3 * side**2 * (side - 1)
        out.append(rep["unit_distance_pairs"] == expect == closed == naive_unit_pairs(pts) and rep["ratio"] < 1)
    record(5, all(out), "3-grid 54, 4-grid 144, ratios below 1")
    assert all(out)


def test_criterion_6_bound_sweep(record, tmp_path):
    t0 = time.perf_counter()
    path = tmp_path / "sweep.csv"
    code = main(["verify-bound", "--out", str(path)])
    rows = list(csv.DictReader(path.open()))
    dt = time.perf_counter() - t0
    fams = {r["family"] for r in rows}
    sizes = [int(r["m"]) for r in rows]
    worst = max(float(r["ratio"]) for r in rows)
    # recompute one row with the independent oracle
    small = next(r for r in rows if r["family"] == "grid" and r["m"] == "27")
    pts = configgen.grid(3)
    exact = naive_incidences(pts, configgen.unit_spheres_at(pts))
    m = n = 27
    ok = (
        code == 0
        and fams == {"grid", "random"}
        and min(sizes) >= 27
        and max(sizes) <= 1000
        and all(r["m"] == r["n"] for r in rows)
        and int(small["measured"]) == exact
        and all(float(r["ratio"]) <= 10 for r in rows)
        and abs(float(small["bound"]) - ((m * n) ** 0.75 + m + n)) < 1e-3 * float(small["bound"])
        and dt < 600
    )
    record(6, ok, f"{len(rows)} rows, max ratio {worst:.3f}, {dt:.1f}s")
    assert ok


def test_criterion_7_real_ideal(record):
    v = is_real_principal(P("x1^2+x2^2+x3^2-1"))
    signs = {int(np.sign(float(val))) for _, val in v.witnesses}
    exact = all(evaluate(P("x1^2+x2^2+x3^2-1"), x) == val for x, val in v.witnesses)
    w = is_real_principal(P("x1^2+x2^2"))
    h = hat_poly(FactoredPoly.of(P("x1^2+x2^2+x3^2-1"), P("x1^2+x2^2")))
    ok = (
        v.status == "real"
        and signs == {1, -1}
        and exact
        and w.status == "not_real"
        and h.expand() == P("x1^2+x2^2+x3^2-1")
    )
    record(7, ok, f"sphere {v.status}, cylinder axis {w.status}, hat keeps the sphere")
    assert ok


def test_criterion_8_realify(record):
    A = [P("x1^2+x2^2")]
    out = realify_family(A, seed=0)
    axis = [(0, 0, Fraction(k, 7)) for k in range(-50, 50)]
    ok = (
        len(out) == 1
        and out[0].degree() == 1
        and all(evaluate(out[0], p) == 0 for p in axis)
        and sum(f.degree() for f in out) < sum(f.degree() for f in A)
    )
    record(8, ok, f"replacement {to_text(out[0])}, 100 axis points on its zero set")
    assert ok


def test_criterion_9_graded_slice(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    ok = True
    for D in range(1, 5):
        # a dense random polynomial of degree exactly D
        terms = {e: Fraction(int(rng.integers(-5, 6)) or 1) for e in product(range(D + 1), repeat=3) if sum(e) <= D}
        p = MultiPoly(3, terms)
        assert p.degree() == D
        for e in range(D, 9):
            g = graded_slice(p, e)
            ok = ok and len(g.ideal_basis) == comb(e - D + 3, 3)
            ok = ok and len(g.complement_basis) == comb(e + 3, 3) - comb(e - D + 3, 3)
            ok = ok and g.certify()
    dt = time.perf_counter() - t0
    ok = ok and dt < 30
    record(9, ok, f"26 (D, e) pairs certified, {dt:.1f}s")
    assert ok


def test_criterion_10_degeneracy(record):
    bad = check_nondegeneracy(configgen.degenerate_circle_pencil(), [], NondegeneracyParams())
    rng = np.random.default_rng(10)
    false_pos = 0
    for _ in range(50):
        triple = [
            Surface.sphere(tuple(Fraction(int(v), 3) for v in rng.integers(-9, 10, 3)), Fraction(int(rng.integers(1, 30)), 4))
            for _ in range(3)
        ]
        false_pos += not check_nondegeneracy(triple, [], NondegeneracyParams()).ok
    ok = bool(bad.common_circle_triples) and false_pos == 0
    record(10, ok, f"pencil flagged, {false_pos} false positives out of 50")
    assert ok
