"""Two-level partition pipeline for point-surface incidences.

Level one cuts space with :func:`build_partition`. Points on the zero set are
split among the (realified) factors of the cuts and, depending on how crowded
each factor is, counted directly (A1), re-partitioned in space with a cut of
degree about ``E_j`` (A2), or re-partitioned on the factor's zero set (A3).

Counting is always exact. Every bucket is counted on its own and the sum is
compared with a global count, so a bucketing mistake cannot go unnoticed.
Cell-crossing numbers (``n_i``, ``n_ij``) are sampled estimates united with
the exact set of surfaces that have an incident point in the cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator

from .._validation import check_points
from ..partition import build_partition, cells_met
from ..polynomial import MultiPoly, as_fraction, divides, sign_at, to_text
from ..real_ideal import irreducibility_heuristic, realify_with_report
from ..sampling import line_shoot_samples, sphere_samples, unit_vectors
from ..surface_partition import build_surface_partition, not_in_ideal
from ..surfaces import Surface
from .bounds import canham_bounds, choose_D, choose_E, theoretical_bound
from .counting import incidence_lists, incidences_bruteforce
from .nondegeneracy import FeasibilityGuardExceeded, NondegeneracyParams, check_nondegeneracy


@dataclass(frozen=True)
class PipelineConfig:
    c: Fraction = Fraction(1)
    slack: Fraction = Fraction(1, 10)
    seed: int = 0
    rounds: int | None = None
    sampling_density: int = 256
    waive_nondegeneracy: bool = False
    enum_budget: int = 3000
    nondegeneracy_guard: int = 2_000_000


@dataclass
class IncidenceReport:
    m: int
    n: int
    k: int
    total_incidences: int
    brute_force_total: int
    regime: str
    level1: dict | None = None
    factors: list[dict] = field(default_factory=list)
    buckets: dict = field(default_factory=lambda: {"A1": [], "A2": [], "A3": []})
    bound_terms: dict = field(default_factory=dict)
    nondegeneracy: dict | None = None
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "total_incidences": self.total_incidences,
            "brute_force_total": self.brute_force_total,
            "regime": self.regime,
            "level1": self.level1,
            "factors": self.factors,
            "buckets": self.buckets,
            "bound_terms": self.bound_terms,
            "nondegeneracy": self.nondegeneracy,
            "flags": self.flags,
        }


def _incidences(pts, idx: Sequence[int], surfaces: Sequence[Surface], surf_idx: Sequence[int]):
    """Exact incidences between a point subset and a surface subset; also the surfaces hit."""
    if not idx or not surf_idx:
        return 0, set()
    lists = incidence_lists([pts[i] for i in idx], [surfaces[j] for j in surf_idx])
    return sum(len(L) for L in lists), {surf_idx[a] for a, L in enumerate(lists) if L}


def _samples(S: Surface, density: int, seed):
    if S.kind == "sphere":
        return sphere_samples(S.center, S.radius_sq, density, seed)
    try:
        return line_shoot_samples(S.defining_poly, density, seed)
    except ValueError:
        return np.zeros((0, S.dim))


def _plane_circle_samples(L: MultiPoly, S: Surface, density: int, seed) -> np.ndarray:
    """Float samples of the circle where a sphere meets the plane ``L = 0``."""
    n = L.num_vars
    a = np.array([float(L.coefficient(tuple(int(i == j) for j in range(n)))) for i in range(n)])
    b = -float(L.constant_term())
    c = np.array([float(v) for v in S.center])
    norm = np.linalg.norm(a)
    h = (a @ c - b) / norm
    r2 = float(S.radius_sq) - h * h
    if r2 <= 0:
        return np.zeros((0, n))
    u = a / norm
    center = c - h * u
    # orthonormal basis of the plane
    basis = np.linalg.svd(u[None, :])[2][1:]
    dirs = unit_vectors(density, 2, seed)
    return center + math.sqrt(r2) * dirs @ basis


def _bucket(pj: int, Dj: int, n: int, k: int, c: Fraction) -> str:
    if pj**k < Dj**k * n:
        return "A1"
    if pj**k < c * Dj ** (3 * k - 1) * n:
        return "A2"
    return "A3"


def run_pipeline(
    points,
    surfaces: Sequence[Surface],
    params: NondegeneracyParams = NondegeneracyParams(),
    partition_config: PipelineConfig | None = None,
) -> IncidenceReport:
    """Count incidences through the two-level decomposition and report every stage."""
    cfg = partition_config or PipelineConfig()
    pts = check_points(points)
    surfaces = list(surfaces)
    m, n, k = len(pts), len(surfaces), params.k
    if pts and any(S.dim != len(pts[0]) for S in surfaces):
        raise ValueError("surface and point dimensions differ")
    brute, _ = incidences_bruteforce(pts, surfaces)
    report = IncidenceReport(m, n, k, 0, brute, "trivial")
    report.flags.append("smoothness_unchecked")
    if m and n:
        try:
            nd = check_nondegeneracy(surfaces, pts, params, guard=cfg.nondegeneracy_guard)
            report.nondegeneracy = nd.to_dict()
            if not nd.ok:
                if not cfg.waive_nondegeneracy:
                    raise ValueError("configuration violates the non-degeneracy hypotheses")
                report.flags.append("nondegeneracy_violated_waived")
        except FeasibilityGuardExceeded as exc:
            report.flags.append(f"nondegeneracy_unchecked: {exc}")
    if not m or not n:
        return report
    c = as_fraction(cfg.c)
    D_target = choose_D(m, n, k)
    all_surf = list(range(n))
    if not (n < c * m**k and m < c * n**3) or D_target < 1:
        report.regime = "kst"
        report.total_incidences, _ = _incidences(pts, list(range(m)), surfaces, all_surf)
        b1, b2 = canham_bounds(m, n, k)
        report.bound_terms = {
            "total": {"measured": report.total_incidences, "bound": min(b1, b2)},
            "theoretical": theoretical_bound(m, n, k),
        }
        _finish(report)
        return report

    report.regime = "partition"
    t = cfg.rounds if cfg.rounds is not None else max(1, math.ceil(3 * math.log2(D_target)))
    part = build_partition(pts, t, cfg.slack, cfg.seed, enum_budget=cfg.enum_budget)
    if not part.certified:
        report.flags.append("level1_partition_uncertified")
    polys = list(part.round_polys)

    # sampled cell crossings, one sample set per surface
    sampled: dict[tuple, set[int]] = {}
    for j, S in enumerate(surfaces):
        for key in cells_met(polys, _samples(S, cfg.sampling_density, [cfg.seed, j])):
            sampled.setdefault(key, set()).add(j)
    cells = []
    level1_total = 0
    for cond, idx in part.pieces.items():
        cnt, hit = _incidences(pts, idx, surfaces, all_surf)
        level1_total += cnt
        n_i = len(hit | sampled.get(cond.signs, set()))
        cells.append({"signs": str(cond), "m_i": len(idx), "n_i": n_i, "incidences": cnt})

    # factors of the cuts, made real
    raw_factors = []
    for q in polys:
        split = irreducibility_heuristic(q, cfg.seed)
        raw_factors.extend(f for f in split.factors if not f.is_constant())
    real_factors, realify_log = realify_with_report(raw_factors, cfg.seed)
    factors: list[MultiPoly] = []
    for f in real_factors:
        f = f.primitive()
        if f not in factors:
            factors.append(f)
    for entry in realify_log:
        report.flags.extend(f"realify {to_text(entry.original)}: {fl}" for fl in entry.flags)

    S1 = [j for j, S in enumerate(surfaces) if any(
        f.degree() >= S.degree and divides(S.defining_poly, f) for f in factors)]
    S2 = [j for j in all_surf if j not in set(S1)]
    residual = list(part.residual)
    s1_total, _ = _incidences(pts, residual, surfaces, S1)

    owned: list[list[int]] = [[] for _ in factors]
    unassigned = []
    for i in residual:
        j = next((j for j, f in enumerate(factors) if sign_at(f, pts[i]) == 0), None)
        (unassigned if j is None else owned[j]).append(i)
    if unassigned:
        report.flags.append(f"{len(unassigned)} zero-set points lie on no realified factor")
    un_total, _ = _incidences(pts, unassigned, surfaces, S2)

    a1_total = a23_total = 0
    a1_degree_sum = 0
    for j, (f, idx) in enumerate(zip(factors, owned)):
        Dj, pj = f.degree(), len(idx)
        bucket = _bucket(pj, Dj, n, k, c)
        info = {"poly": to_text(f), "D_j": Dj, "P_j": pj, "bucket": bucket}
        report.buckets[bucket].append(j)
        if bucket == "A1" or pj == 0:
            cnt, _ = _incidences(pts, idx, surfaces, S2)
            a1_total += cnt
            a1_degree_sum += Dj
            info["incidences"] = cnt
        else:
            E = choose_E(pj, n, Dj, k)
            info["E_j"] = E
            if bucket == "A2":
                cnt = _second_level_space(pts, idx, surfaces, S2, f, E, cfg, info, report)
            else:
                cnt = _second_level_surface(pts, idx, surfaces, S2, f, E, cfg, info, report)
            a23_total += cnt
            info["incidences"] = cnt
        report.factors.append(info)

    report.total_incidences = level1_total + s1_total + a1_total + a23_total + un_total
    D = part.total_degree_D
    report.level1 = {
        "D_target": D_target,
        "D": D,
        "t": part.t,
        "certified": part.certified,
        "round_polys": [to_text(q) for q in polys],
        "cells": cells,
        "sum_ni": sum(cl["n_i"] for cl in cells),
        "residual_count": len(residual),
        "S1": S1,
        "incidences_cells": level1_total,
        "incidences_S1": s1_total,
        "incidences_unassigned": un_total,
    }
    Df = max(D, 1)
    report.bound_terms = {
        "cells": {"measured": level1_total, "bound": m * n ** (1 - 1 / k) / Df ** (1 - 1 / k) + Df**2 * n},
        "sum_ni": {"measured": report.level1["sum_ni"], "bound": Df**2 * n},
        "S1": {"measured": s1_total, "bound": Df * m ** (2 / 3) + m},
        "A1": {"measured": a1_total, "bound": a1_degree_sum * n + m},
        "A2_A3": {
            "measured": a23_total,
            "bound": m ** (k / (2 * k - 1)) * n ** ((2 * k - 2) / (2 * k - 1)) * Df ** ((k - 1) / (2 * k - 1)) + m,
        },
        "total": {"measured": report.total_incidences, "bound": theoretical_bound(m, n, k)},
    }
    _finish(report)
    return report


def _finish(report: IncidenceReport) -> None:
    if report.total_incidences != report.brute_force_total:
        raise AssertionError(
            f"bucketed count {report.total_incidences} differs from direct count {report.brute_force_total}"
        )


def _second_level_space(pts, idx, surfaces, S2, f, E, cfg, info, report) -> int:
    sub = [pts[i] for i in idx]
    max_deg = max(1, math.floor(E))
    rounds = max(1, math.ceil(3 * math.log2(E))) if E > 1 else 1
    inner = build_partition(sub, rounds, cfg.slack, cfg.seed, max_degree=max_deg, enum_budget=cfg.enum_budget)
    polys = list(inner.round_polys)
    sampled: dict[tuple, set[int]] = {}
    for j in S2:
        for key in cells_met(polys, _samples(surfaces[j], cfg.sampling_density, [cfg.seed, j, 2])):
            sampled.setdefault(key, set()).add(j)
    pieces = []
    total = 0
    for cond, loc in inner.pieces.items():
        cnt, hit = _incidences(pts, [idx[a] for a in loc], surfaces, S2)
        total += cnt
        pieces.append({"signs": str(cond), "m_ij": len(loc), "n_ij": len(hit | sampled.get(cond.signs, set())), "incidences": cnt})
    bcount, _ = _incidences(pts, [idx[a] for a in inner.residual], surfaces, S2)
    total += bcount
    info.update(
        {
            "second_level": "space",
            "polys": [to_text(q) for q in polys],
            "total_degree": inner.total_degree_D,
            "certified": inner.certified,
            "nonvanishing_on_Z_j": [not_in_ideal(q, f) for q in polys],
            "pieces": pieces,
            "boundary_incidences": bcount,
        }
    )
    if inner.total_degree_D > E:
        report.flags.append(f"A2 factor {to_text(f)}: cut degree {inner.total_degree_D} exceeds E_j {E:.3f}")
    return total


def _second_level_surface(pts, idx, surfaces, S2, f, E, cfg, info, report) -> int:
    try:
        res = build_surface_partition(f, [pts[i] for i in idx], max(1, math.ceil(E)), slack=cfg.slack, seed=cfg.seed)
    except (ValueError, RuntimeError) as exc:
        report.flags.append(f"A3 factor {to_text(f)}: counted directly ({exc})")
        info["second_level"] = "direct"
        cnt, _ = _incidences(pts, idx, surfaces, S2)
        return cnt
    polys = list(res.polys)
    sampled: dict[tuple, set[int]] = {}
    if f.degree() == 1:
        for j in S2:
            if surfaces[j].kind == "sphere":
                smp = _plane_circle_samples(f, surfaces[j], cfg.sampling_density, [cfg.seed, j, 3])
                for key in cells_met(polys, smp):
                    sampled.setdefault(key, set()).add(j)
    pieces = []
    total = 0
    for cond, loc in res.realizations.items():
        cnt, hit = _incidences(pts, [idx[a] for a in loc], surfaces, S2)
        total += cnt
        pieces.append({"signs": str(cond), "m_ij": len(loc), "n_ij": len(hit | sampled.get(cond.signs, set())), "incidences": cnt})
    bcount, _ = _incidences(pts, [idx[a] for a in res.boundary_residual], surfaces, S2)
    total += bcount
    info.update(
        {
            "second_level": "surface",
            "n_ij_method": "circle sampling + incident surfaces" if f.degree() == 1 else "incident surfaces only",
            "polys": [to_text(q) for q in polys],
            "t": res.t,
            "certified": res.certified,
            "pieces": pieces,
            "boundary_incidences": bcount,
        }
    )
    if not res.certified:
        report.flags.append(f"A3 factor {to_text(f)}: surface partition uncertified")
    return total


class IncidenceCounter(BaseEstimator):
    """Estimator front end: ``fit(points, surfaces=...)`` runs the pipeline and stores ``report_``."""

    def __init__(self, k=3, C=2, c=1, slack=0.1, seed=0, sampling_density=256, waive_nondegeneracy=False):
        self.k = k
        self.C = C
        self.c = c
        self.slack = slack
        self.seed = seed
        self.sampling_density = sampling_density
        self.waive_nondegeneracy = waive_nondegeneracy

    def fit(self, X, y=None, *, surfaces=()):
        slack = Fraction(self.slack).limit_denominator(10**6) if isinstance(self.slack, float) else self.slack
        cfg = PipelineConfig(
            c=as_fraction(self.c),
            slack=as_fraction(slack),
            seed=self.seed,
            sampling_density=self.sampling_density,
            waive_nondegeneracy=self.waive_nondegeneracy,
        )
        self.report_ = run_pipeline(X, surfaces, NondegeneracyParams(self.k, self.C), cfg)
        self.total_incidences_ = self.report_.total_incidences
        return self
