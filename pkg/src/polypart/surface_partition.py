"""Partitioning points that lie on a hypersurface ``Z(P)``.

Each round's cut is drawn from the span of a monomial complement of the
degree-``e_i`` slice of the ideal generated by the homogenized ``P``. A nonzero
element of that complement is not a multiple of ``P``, so when ``(P)`` is a
real prime ideal the cut cannot vanish on all of ``Z(P)``. The membership
test is repeated exactly on every cut that is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_nonneg_int, check_points, check_poly, check_slack
from .partition import (
    HALF,
    BisectionCertificate,
    BisectionFailure,
    assign_cells,
    bisect_families,
    family_counts,
)
from .polynomial import MultiPoly, as_fraction, graded_slice, homogenize, signs_at, to_text
from .polynomial.graded import normal_form
from .real_ideal import REAL, irreducibility_heuristic, is_real_principal
from .sampling import line_shoot_samples

DEFAULT_RHO = Fraction(1, 4)
C0 = 2
C1 = 8


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def round_count(D: int, E: int, d: int) -> int:
    """``ceil(log2(D * E^(d-1)))``."""
    return _ceil_log2(D * E ** (d - 1))


def round_degree(i: int, D: int, d: int, c: float = 1.0) -> int:
    return max(1, math.ceil(c * max((2**i / D) ** (1 / (d - 1)), 2 ** (i / d)) - 1e-12))


def not_in_ideal(Q: MultiPoly, P: MultiPoly) -> bool:
    """Exact check that the homogenized ``Q`` is not a multiple of the homogenized ``P``."""
    if Q.is_zero():
        return False
    return not normal_form(homogenize(Q), homogenize(P)).is_zero()


def _check_on_surface(points, P: MultiPoly):
    bad = [i for i, s in enumerate(signs_at(P, points)) if s != 0]
    if bad:
        raise ValueError(f"{len(bad)} points are not exactly on Z(P), first index {bad[0]}")


@dataclass(frozen=True)
class SurfacePartitionResult:
    base_poly: MultiPoly
    base_degree: int
    E: int
    polys: tuple[MultiPoly, ...]
    t: int
    realizations: dict
    boundary_residual: tuple[int, ...]
    rho: Fraction
    slack: Fraction
    certified: bool
    certificates: tuple[BisectionCertificate | None, ...]
    round_degrees: tuple[int, ...]
    nonvanishing: tuple[bool, ...]
    schedule_constant: float
    c0: int = C0
    c1: int = C1
    m: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def t_formula(self) -> int:
        return round_count(self.base_degree, self.E, self.base_poly.num_vars)

    @property
    def total_degree(self) -> int:
        return sum(q.degree() for q in self.polys)

    @property
    def bucket_cap(self) -> int:
        return math.ceil(self.m * (HALF + self.slack) ** self.t)

    @property
    def max_bucket(self) -> int:
        return max((len(v) for v in self.realizations.values()), default=0)

    def bounds_hold(self) -> bool:
        return self.t <= self.t_formula + self.c0 and self.total_degree <= self.c1 * self.E

    def to_dict(self) -> dict:
        return {
            "base_poly": to_text(self.base_poly),
            "base_degree": self.base_degree,
            "E": self.E,
            "t": self.t,
            "t_formula": self.t_formula,
            "rho": str(self.rho),
            "slack": str(self.slack),
            "c0": self.c0,
            "c1": self.c1,
            "schedule_constant": self.schedule_constant,
            "polys": [to_text(q) for q in self.polys],
            "round_degree_budgets": list(self.round_degrees),
            "total_degree": self.total_degree,
            "nonvanishing_certified": list(self.nonvanishing),
            "certified": self.certified,
            "bounds_hold": self.bounds_hold(),
            "bucket_cap": self.bucket_cap,
            "max_bucket": self.max_bucket,
            "realizations": [{"signs": str(k), "count": len(v), "indices": v} for k, v in self.realizations.items()],
            "boundary_residual": list(self.boundary_residual),
            "certificates": [c.to_dict() if c else None for c in self.certificates],
            "notes": list(self.notes),
        }


def realizations_on_surface(points, P, polys):
    """Sign-vector buckets of points on ``Z(P)``; points with a zero sign go to the boundary."""
    pts = check_points(points)
    P = check_poly(P, len(pts[0]) if pts else 3)
    _check_on_surface(pts, P)
    return assign_cells(pts, polys)


def _attempt(P, pts, E, eps, seed, c, enum_budget, restarts):
    D = P.degree()
    d = P.num_vars
    m = len(pts)
    t = round_count(D, E, d)
    families = [list(range(m))] if m else []
    polys, certs, degs, nonvan, notes = [], [], [], [], []
    ok = True
    for i in range(1, t + 1):
        e = round_degree(i, D, d, c)
        degs.append(e)
        basis = graded_slice(P, e).affine_complement_exponents()
        if len(basis) < len(families) + 1:
            return None, f"round {i}: complement of dimension {len(basis)} too small for {len(families)} buckets"
        global_cap = math.ceil(m * (HALF + eps) ** i)
        caps = [min(math.ceil((HALF + eps) * len(F)), global_cap) for F in families]
        try:
            q, cert = bisect_families(
                families, pts, e, eps, seed=[seed, i], caps=caps, basis=basis,
                enum_budget=enum_budget, restarts=restarts,
            )
        except BisectionFailure as exc:
            if exc.poly is None:
                return None, f"round {i}: no candidate cut"
            q, cert, ok = exc.poly, exc.certificate, False
            notes.append(f"round {i}: best-effort cut, caps not met")
        polys.append(q)
        certs.append(cert)
        nonvan.append(not_in_ideal(q, P))
        _, s = family_counts(q, pts, families)
        families = [G for F in families for G in ([j for j in F if s[j] > 0], [j for j in F if s[j] < 0]) if G]
    return (polys, certs, degs, nonvan, notes, ok), ""


def build_surface_partition(
    P,
    points,
    E: int,
    rho=DEFAULT_RHO,
    slack=Fraction(1, 10),
    seed: int = 0,
    *,
    assume_real_irreducible: bool = False,
    justification: str = "",
    enum_budget: int = 3000,
    restarts: int = 20,
    max_schedule_raises: int = 3,
) -> SurfacePartitionResult:
    """Partition points on ``Z(P)`` with ``t = ceil(log2(D E^(d-1)))`` certified bisection rounds.

    Round ``i`` draws its cut from the complement of the ideal slice at degree
    ``e_i = ceil(c * max((2^i/D)^(1/(d-1)), 2^(i/d)))``, starting with ``c = 1``
    and raising ``c`` when the complement is too small or a round fails.

    ``P`` must pass the real-ideal and irreducibility checks unless
    ``assume_real_irreducible`` is set together with a ``justification``.
    """
    pts = check_points(points)
    d = len(pts[0]) if pts else 3
    P = check_poly(P, d)
    if P.is_constant():
        raise ValueError("P must be nonconstant")
    E = check_nonneg_int(E, "E")
    rho = as_fraction(rho)
    eps = check_slack(slack)
    D = P.degree()
    if E < rho * D:
        raise ValueError(f"E = {E} is below rho * D = {rho * D}")
    _check_on_surface(pts, P)
    notes = []
    if assume_real_irreducible:
        if not justification:
            raise ValueError("skipping the real-ideal check needs a justification")
        notes.append(f"real/irreducible check skipped: {justification}")
    else:
        verdict = is_real_principal(P, seed=seed)
        if verdict.status != REAL:
            raise ValueError(f"P is not certified to generate a real ideal ({verdict.status})")
        if irreducibility_heuristic(P, seed).status == "reducible":
            raise ValueError("P is reducible; split it and route the factors first")
    c = 1.0
    last = ""
    for attempt in range(max_schedule_raises + 1):
        out, why = _attempt(P, pts, E, eps, seed, c, enum_budget, restarts)
        if out is not None and out[5]:
            break
        last = why or "uncertified round"
        notes.append(f"schedule constant {c}: {last}")
        if out is not None and attempt == max_schedule_raises:
            break
        c += 1.0
    if out is None:
        raise RuntimeError(f"surface partition failed after raising the degree schedule: {last}")
    polys, certs, degs, nonvan, round_notes, ok = out
    notes.extend(round_notes)
    cells, boundary = assign_cells(pts, polys)
    certified = ok and all(nonvan) and all(cc is not None and cc.certified for cc in certs)
    res = SurfacePartitionResult(
        base_poly=P,
        base_degree=D,
        E=E,
        polys=tuple(polys),
        t=len(polys),
        realizations=cells,
        boundary_residual=tuple(boundary),
        rho=rho,
        slack=eps,
        certified=certified,
        certificates=tuple(certs),
        round_degrees=tuple(degs),
        nonvanishing=tuple(nonvan),
        schedule_constant=c,
        m=len(pts),
        notes=tuple(notes),
    )
    if not res.bounds_hold():
        notes.append("round count or total degree exceeds the configured constants")
        res = replace(res, notes=tuple(notes))
    return res


def sample_surface_points(P, count: int, seed: int = 0, *, box: int = 4) -> np.ndarray:
    """Approximate floating point points of ``Z(P)`` (instrumentation only)."""
    P = check_poly(P, P.num_vars if isinstance(P, MultiPoly) else 3)
    return line_shoot_samples(P, count, seed, box=box)


class SurfacePartitioner(TransformerMixin, BaseEstimator):
    """Estimator wrapper around :func:`build_surface_partition`.

    ``transform`` gives exact signs of the cuts; ``predict`` the realization
    index in ``cells_`` or ``-1`` (boundary, or a cell without fitted points).
    """

    def __init__(self, base_poly="x1", E=2, rho=0.25, slack=0.1, seed=0, assume_real_irreducible=False, justification=""):
        self.base_poly = base_poly
        self.E = E
        self.rho = rho
        self.slack = slack
        self.seed = seed
        self.assume_real_irreducible = assume_real_irreducible
        self.justification = justification

    def fit(self, X, y=None):
        pts = check_points(X)
        d = len(pts[0]) if pts else 3
        self.result_ = build_surface_partition(
            check_poly(self.base_poly, d),
            pts,
            self.E,
            _as_param(self.rho),
            _as_param(self.slack),
            self.seed,
            assume_real_irreducible=self.assume_real_irreducible,
            justification=self.justification,
        )
        self.polys_ = self.result_.polys
        self.cells_ = list(self.result_.realizations)
        self.n_features_in_ = d
        return self

    def transform(self, X):
        if not hasattr(self, "result_"):
            raise RuntimeError("call fit before using this estimator")
        pts = check_points(X, self.n_features_in_)
        return np.array([signs_at(q, pts) for q in self.polys_], dtype=int).T.reshape(len(pts), -1)

    def predict(self, X):
        S = self.transform(X)
        lookup = {c.signs: j for j, c in enumerate(self.cells_)}
        return np.array([-1 if 0 in r else lookup.get(tuple(r), -1) for r in S.tolist()], dtype=int)


def _as_param(v):
    return Fraction(v).limit_denominator(10**6) if isinstance(v, float) else v
