"""Discrete polynomial ham sandwich cuts and sign-condition partitions of point sets.

A cut is searched in three stages, cheapest first:

1. single monomials from the basis,
2. hyperplanes of the lifted (Veronese) space through ``N - 1`` lifted points,
   enumerated while the number of subsets stays within ``enum_budget``,
3. a seeded floating point search: Newton-type steps that push the value at
   each family's median point to zero, in an orthonormalised feature basis,
   with random restarts.

Whatever the stage, the candidate is converted to exact rational
coefficients and every family is recounted with exact signs. Only that
recount is reported as a certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import Point, check_families, check_nonneg_int, check_points, check_slack
from .polynomial import MultiPoly, divides, monomials_up_to, nullspace, signs_at, to_text
from .polynomial.poly import Exponent
from .sampling import line_shoot_samples, sphere_samples

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class SignCondition:
    """Strict signs (+1/-1) of an ordered list of polynomials."""

    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("strict sign conditions take values +1 or -1 only")

    def __len__(self) -> int:
        return len(self.signs)

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs) or "()"


@dataclass(frozen=True)
class BisectionCertificate:
    """Exact ``(positive, negative, on_zero)`` tallies of one cut over each family."""

    per_family_counts: tuple[tuple[int, int, int], ...]
    slack_used: Fraction
    caps: tuple[int, ...] = ()
    strategy: str = ""

    @property
    def certified(self) -> bool:
        return all(p <= c and n <= c for (p, n, _), c in zip(self.per_family_counts, self.caps))

    def to_dict(self) -> dict:
        return {
            "per_family_counts": [list(c) for c in self.per_family_counts],
            "caps": list(self.caps),
            "slack_used": str(self.slack_used),
            "strategy": self.strategy,
            "certified": self.certified,
        }


class BisectionFailure(RuntimeError):
    """No cut met the caps within the search budget; carries the best one found."""

    def __init__(self, message: str, poly: MultiPoly | None, certificate: BisectionCertificate | None):
        super().__init__(message)
        self.poly = poly
        self.certificate = certificate


def family_counts(q: MultiPoly, points: Sequence[Point], families: Sequence[Sequence[int]]):
    """Exact (pos, neg, zero) counts of ``q`` on each family."""
    flat = sorted({i for F in families for i in F})
    s = dict(zip(flat, signs_at(q, [points[i] for i in flat])))
    out = []
    for F in families:
        pos = sum(1 for i in F if s[i] > 0)
        neg = sum(1 for i in F if s[i] < 0)
        out.append((pos, neg, len(F) - pos - neg))
    return out, s


def slack_of(counts) -> Fraction:
    worst = Fraction(0)
    for pos, neg, zero in counts:
        n = pos + neg + zero
        if n:
            worst = max(worst, Fraction(max(pos, neg) - math.ceil(Fraction(n, 2)), n))
    return worst


def default_caps(families, slack) -> list[int]:
    return [math.ceil((HALF + slack) * len(F)) for F in families]


def make_certificate(q, points, families, caps, strategy="") -> BisectionCertificate:
    counts, _ = family_counts(q, points, families)
    return BisectionCertificate(tuple(counts), slack_of(counts), tuple(caps), strategy)


def _meets(counts, caps) -> bool:
    return all(p <= c and n <= c for (p, n, _), c in zip(counts, caps))


def _poly_from(basis: Sequence[Exponent], coefs, num_vars: int) -> MultiPoly:
    return MultiPoly(num_vars, {e: c for e, c in zip(basis, coefs) if c})


class _Search:
    """State shared by the three search stages for one bisection problem."""

    def __init__(self, points, families, caps, basis, num_vars):
        self.points = points
        self.families = families
        self.caps = caps
        self.basis = list(basis)
        self.num_vars = num_vars
        self.best: tuple[int, MultiPoly, list] | None = None

    def check(self, q: MultiPoly) -> bool:
        if q.is_zero():
            return False
        counts, _ = family_counts(q, self.points, self.families)
        excess = sum(max(0, p - c) + max(0, n - c) for (p, n, _), c in zip(counts, self.caps))
        if self.best is None or excess < self.best[0]:
            self.best = (excess, q, counts)
        return excess == 0

    def monomials(self):
        for e in sorted((e for e in self.basis if any(e)), key=lambda e: (sum(e), tuple(-a for a in e))):
            q = MultiPoly.monomial(e, 1) if len(e) == self.num_vars else None
            if q is not None and self.check(q):
                return q
        return None

    def enumerate_hyperplanes(self, budget: int):
        idx = sorted({i for F in self.families for i in F})
        k = len(self.basis) - 1
        if k < 1 or k > len(idx) or math.comb(len(idx), k) > budget:
            return None
        lifted = {i: [_mono_value(self.points[i], e) for e in self.basis] for i in idx}
        for subset in islice(combinations(idx, k), budget):
            ns = nullspace([lifted[i] for i in subset], len(self.basis))
            if not ns:
                continue
            q = _poly_from(self.basis, ns[0], self.num_vars)
            if q.is_constant():
                continue
            if self.check(q.primitive()):
                return q.primitive()
        return None

    def heuristic(self, rng, restarts: int, iters: int):
        idx = sorted({i for F in self.families for i in F})
        if not idx:
            return None
        pos = {i: j for j, i in enumerate(idx)}
        fams = [np.array([pos[i] for i in F]) for F in self.families if F]
        caps = [c for F, c in zip(self.families, self.caps) if F]
        X = np.array([[float(v) for v in self.points[i]] for i in idx])
        # power-of-two scaling keeps the conversion back to exact coefficients exact
        top = float(np.max(np.abs(X))) if X.size else 0.0
        k = math.frexp(top)[1] if top > 0 else 0
        Y = X / 2.0**k
        exps = np.array(self.basis, dtype=float)
        Phi = np.prod(Y[:, None, :] ** exps[None, :, :], axis=2)
        U, s, Vt = np.linalg.svd(Phi, full_matrices=False)
        r = int((s > s[0] * 1e-12).sum()) if s.size else 0
        if r == 0:
            return None
        U = U[:, :r]
        for _ in range(restarts):
            c = rng.standard_normal(r)
            for _ in range(iters):
                q = U @ c
                bad = 0
                med, tau = [], []
                for F, cap in zip(fams, caps):
                    v = q[F]
                    order = np.argsort(v, kind="stable")
                    n = len(F)
                    bad += max(0, int((v > 0).sum()) - cap) + max(0, int((v < 0).sum()) - cap)
                    j = (n - 1) // 2
                    med.append(F[order[j]])
                    tau.append(v[order[j]] if n % 2 else 0.5 * (v[order[j]] + v[order[j + 1]]))
                if bad == 0:
                    w = Vt[:r].T @ (c / s[:r])
                    cand = self._exact(w, k)
                    if cand is not None and self.check(cand):
                        return cand
                delta = np.linalg.lstsq(U[med], np.array(tau), rcond=None)[0]
                c = c - delta
        return None

    def _exact(self, w: np.ndarray, k: int) -> MultiPoly | None:
        top = float(np.max(np.abs(w)))
        if not np.isfinite(top) or top == 0:
            return None
        coefs = []
        for e, v in zip(self.basis, w / top):
            # about 32 significant bits, then undo the 2^k point scaling exactly
            coefs.append(Fraction(round(float(v) * 2**32), 2 ** (32 + k * sum(e))))
        q = _poly_from(self.basis, coefs, self.num_vars)
        return q.primitive() if not q.is_zero() else None


def _mono_value(x: Point, e: Exponent) -> Fraction:
    v = Fraction(1)
    for a, k in zip(x, e):
        if k:
            v *= a**k
    return v


def bisect_families(
    families,
    points,
    degree_budget: int,
    slack=Fraction(1, 10),
    seed=0,
    *,
    caps: Sequence[int] | None = None,
    basis: Sequence[Exponent] | None = None,
    enum_budget: int = 3000,
    restarts: int = 20,
    iters: int = 100,
) -> tuple[MultiPoly, BisectionCertificate]:
    """Find ``Q`` of degree ``<= degree_budget`` with at most ``(1/2 + slack)|F|`` points of
    every family on each strict side.

    ``basis`` restricts ``Q`` to the span of the given monomials (default: all
    monomials of degree ``<= degree_budget``). ``caps`` overrides the per-family
    limits; they may only be tighter than the slack-derived ones. Raises
    :class:`BisectionFailure` (with the best cut seen) when the search budget
    runs out.
    """
    pts = check_points(points)
    d = len(pts[0]) if pts else 3
    fams = [F for F in check_families(families, len(pts)) if F]
    slack = check_slack(slack)
    e = check_nonneg_int(degree_budget, "degree_budget")
    if basis is None:
        basis = monomials_up_to(d, e)
    else:
        basis = [tuple(b) for b in basis]
        if any(sum(b) > e for b in basis):
            raise ValueError("basis monomial exceeds the degree budget")
    if len(basis) - 1 < len(fams):
        raise ValueError(
            f"basis of dimension {len(basis)} cannot bisect {len(fams)} families (need at least families + 1)"
        )
    limit = default_caps(fams, slack)
    if caps is not None:
        caps = [min(int(a), b) for a, b in zip(caps, limit)] if len(caps) == len(fams) else None
        if caps is None:
            raise ValueError("caps must match the nonempty families")
    else:
        caps = limit
    search = _Search(pts, fams, caps, basis, d)
    q = search.monomials()
    strategy = "monomial"
    if q is None:
        q = search.enumerate_hyperplanes(enum_budget)
        strategy = "enumeration"
    if q is None:
        rng = np.random.default_rng(seed)
        q = search.heuristic(rng, restarts, iters)
        strategy = "heuristic"
    if q is None:
        best = search.best
        cert = None
        if best is not None:
            cert = BisectionCertificate(tuple(best[2]), slack_of(best[2]), tuple(caps), "best-effort")
        raise BisectionFailure("no certified bisector within the search budget", best[1] if best else None, cert)
    return q, make_certificate(q, pts, fams, caps, strategy)


def assign_cells(points, polys: Sequence[MultiPoly]):
    """Bucket points by their strict sign vector; any zero sign sends a point to the residual."""
    pts = check_points(points)
    cols = [signs_at(q, pts) for q in polys]
    cells: dict[SignCondition, list[int]] = {}
    residual = []
    for i in range(len(pts)):
        sv = tuple(c[i] for c in cols)
        if 0 in sv:
            residual.append(i)
        else:
            cells.setdefault(SignCondition(sv), []).append(i)
    return dict(sorted(cells.items(), key=lambda kv: tuple(-s for s in kv[0].signs))), residual


@dataclass(frozen=True)
class PartitionResult:
    round_polys: tuple[MultiPoly, ...]
    total_degree_D: int
    pieces: dict
    residual: tuple[int, ...]
    certificates: tuple[BisectionCertificate | None, ...]
    m: int
    slack: Fraction
    certified: bool
    degree_budgets: tuple[int, ...] = ()
    degree_constant: int = 2
    seed: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def t(self) -> int:
        return len(self.round_polys)

    @property
    def piece_cap(self) -> int:
        return math.ceil(self.m * (HALF + self.slack) ** self.t)

    @property
    def max_piece(self) -> int:
        return max((len(v) for v in self.pieces.values()), default=0)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "t": self.t,
            "slack": str(self.slack),
            "seed": self.seed,
            "degree_constant": self.degree_constant,
            "degree_budgets": list(self.degree_budgets),
            "round_polys": [to_text(q) for q in self.round_polys],
            "round_degrees": [q.degree() for q in self.round_polys],
            "total_degree_D": self.total_degree_D,
            "certified": self.certified,
            "piece_cap": self.piece_cap,
            "max_piece": self.max_piece,
            "pieces": [{"signs": str(k), "count": len(v), "indices": v} for k, v in self.pieces.items()],
            "residual": list(self.residual),
            "certificates": [c.to_dict() if c else None for c in self.certificates],
            "notes": list(self.notes),
        }


def degree_budget(i: int, d: int, c: int = 2) -> int:
    return math.ceil(c * 2 ** (i / d))


def build_partition(
    points,
    rounds: int,
    slack=Fraction(1, 10),
    seed: int = 0,
    *,
    degree_constant: int = 2,
    enum_budget: int = 3000,
    restarts: int = 20,
    max_degree: int | None = None,
) -> PartitionResult:
    """Run ``rounds`` simultaneous bisection rounds over all current pieces.

    Round ``i`` may use degree up to ``ceil(c * 2^(i/d))`` (or ``max_degree``
    if smaller); lower degrees are tried first. Each piece is capped at
    ``min(ceil((1/2+eps)|F|), ceil(m (1/2+eps)^i))`` so the final pieces obey
    the global bound whenever every round is certified. Points on a round's
    zero set leave the game and end up in the residual.
    """
    pts = check_points(points)
    t = check_nonneg_int(rounds, "rounds")
    eps = check_slack(slack)
    m = len(pts)
    d = len(pts[0]) if pts else 3
    families = [list(range(m))] if m else []
    polys: list[MultiPoly] = []
    certs: list[BisectionCertificate | None] = []
    budgets = []
    notes = []
    certified = True
    for i in range(1, t + 1):
        budget = degree_budget(i, d, degree_constant)
        if max_degree is not None:
            budget = max(1, min(budget, max_degree))
        budgets.append(budget)
        global_cap = math.ceil(m * (HALF + eps) ** i)
        caps = [min(math.ceil((HALF + eps) * len(F)), global_cap) for F in families]
        q, cert, failure = None, None, None
        for e in range(1, budget + 1):
            if math.comb(e + d, d) - 1 < len(families):
                continue
            try:
                q, cert = bisect_families(
                    families,
                    pts,
                    e,
                    eps,
                    seed=[seed, i, e],
                    caps=caps,
                    enum_budget=enum_budget,
                    restarts=restarts if e == budget else 3,
                )
                break
            except BisectionFailure as exc:
                failure = exc
        if q is None:
            certified = False
            if failure is not None and failure.poly is not None:
                q, cert = failure.poly, failure.certificate
                notes.append(f"round {i}: best-effort cut, caps not met")
            else:
                notes.append(f"round {i}: degree budget {budget} too small for {len(families)} pieces")
                q = MultiPoly.variable((i - 1) % d, d)
                cert = make_certificate(q, pts, families, caps, "fallback")
        polys.append(q)
        certs.append(cert)
        _, s = family_counts(q, pts, families)
        nxt = []
        for F in families:
            for side in (1, -1):
                G = [j for j in F if s[j] == side]
                if G:
                    nxt.append(G)
        families = nxt
    pieces, residual = assign_cells(pts, polys)
    # the tracked families must coincide with the sign-vector buckets
    assert sorted(map(sorted, pieces.values())) == sorted(map(sorted, families)) or not m
    certified = certified and all(c is not None and c.certified for c in certs)
    if certified and any(len(v) > math.ceil(m * (HALF + eps) ** t) for v in pieces.values()):
        certified = False
        notes.append("piece bound violated")
    return PartitionResult(
        round_polys=tuple(polys),
        total_degree_D=sum(q.degree() for q in polys),
        pieces=pieces,
        residual=tuple(residual),
        certificates=tuple(certs),
        m=m,
        slack=eps,
        certified=certified,
        degree_budgets=tuple(budgets),
        degree_constant=degree_constant,
        seed=seed,
        notes=tuple(notes),
    )


class SurfaceInZeroSet(ValueError):
    """The surface lies inside the zero set of a partitioning polynomial."""


def _surface_samples(surface, density: int, seed):
    if getattr(surface, "kind", None) == "sphere":
        return sphere_samples(surface.center, surface.radius_sq, density, seed)
    poly = getattr(surface, "defining_poly", surface)
    return line_shoot_samples(poly, density, seed)


def cells_met(polys: Sequence[MultiPoly], samples: np.ndarray, rel_tol: float = 1e-9) -> set[tuple[int, ...]]:
    """Distinct strict sign vectors seen on float samples; near-zero values are skipped."""
    from .polynomial import evaluate_float

    if len(samples) == 0:
        return set()
    if not polys:
        return {()}
    vals = []
    for q in polys:
        v = evaluate_float(q, samples)
        scale = sum(abs(float(c)) for _, c in q.items()) * max(1.0, float(np.max(np.abs(samples)))) ** q.degree()
        vals.append(np.where(np.abs(v) <= rel_tol * scale, 0, np.sign(v)))
    S = np.stack(vals, axis=1).astype(int)
    S = S[np.all(S != 0, axis=1)]
    return {tuple(row) for row in S.tolist()}


def count_cells_met_by_surface(surface, partition, sampling_density: int = 4096, seed: int = 0) -> int:
    """Sampled lower estimate of how many sign-condition cells a surface enters.

    ``partition`` is a :class:`PartitionResult` or a list of polynomials.
    ``surface`` is a :class:`~polypart.surfaces.Surface` or a bare polynomial.
    """
    polys = partition.round_polys if isinstance(partition, PartitionResult) else list(partition)
    f = getattr(surface, "defining_poly", surface)
    for q in polys:
        if not q.is_constant() and q.degree() >= f.degree() and divides(f, q):
            raise SurfaceInZeroSet(f"surface {f} lies in the zero set of {q}")
    return len(cells_met(polys, _surface_samples(surface, sampling_density, seed)))


def total_cells_met(surfaces, partition, sampling_density: int = 4096, seed: int = 0) -> tuple[list[int], int]:
    """Per-surface estimates and their sum (the sum of n_i over cells)."""
    per = [count_cells_met_by_surface(S, partition, sampling_density, seed) for S in surfaces]
    return per, sum(per)


class PolynomialPartitioner(TransformerMixin, BaseEstimator):
    """Estimator wrapper around :func:`build_partition`.

    ``fit`` builds the partitioning polynomials; ``transform`` returns the exact
    sign matrix (points x rounds); ``predict`` returns the index of each point's
    cell in ``cells_``, or ``-1`` for points on the zero set and for
    cells that held no fitted point.
    """

    def __init__(self, rounds=3, slack=0.1, seed=0, degree_constant=2, enum_budget=3000, restarts=20):
        self.rounds = rounds
        self.slack = slack
        self.seed = seed
        self.degree_constant = degree_constant
        self.enum_budget = enum_budget
        self.restarts = restarts

    def fit(self, X, y=None):
        pts = check_points(X)
        self.result_ = build_partition(
            pts,
            self.rounds,
            Fraction(self.slack).limit_denominator(10**6) if isinstance(self.slack, float) else self.slack,
            self.seed,
            degree_constant=self.degree_constant,
            enum_budget=self.enum_budget,
            restarts=self.restarts,
        )
        self.polys_ = self.result_.round_polys
        self.cells_ = list(self.result_.pieces)
        self.n_features_in_ = len(pts[0]) if pts else 3
        return self

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise RuntimeError("call fit before using this estimator")

    def transform(self, X):
        self._check_fitted()
        pts = check_points(X, self.n_features_in_)
        if not self.polys_:
            return np.zeros((len(pts), 0), dtype=int)
        return np.array([signs_at(q, pts) for q in self.polys_], dtype=int).T.reshape(len(pts), -1)

    def predict(self, X):
        S = self.transform(X)
        lookup = {c.signs: j for j, c in enumerate(self.cells_)}
        out = []
        for row in S.tolist():
            row = tuple(row)
            out.append(-1 if 0 in row else lookup.get(row, -1))
        return np.array(out, dtype=int)
