"""Real-ideal classification of principal ideals, gradient repair of non-real
members, and the product of real factors.

"real" is always backed by two exact rational points with opposite strict
signs. "not_real" is exact when the polynomial is (up to sign) a positive
combination of even monomials, and is marked heuristic otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .polynomial import (
    FactoredPoly,
    MultiPoly,
    directional_derivative,
    divmod_poly,
    evaluate,
    nullspace,
    rational_roots,
    restrict_to_line,
)
from .polynomial.poly import sign
from .polynomial.univariate import isolate_real_roots, ueval

REAL, NOT_REAL, UNKNOWN = "real", "not_real", "unknown"


@dataclass(frozen=True)
class RealIdealVerdict:
    status: str
    criterion: str
    witnesses: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()
    heuristic: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "criterion": self.criterion,
            "heuristic": self.heuristic,
            "detail": self.detail,
            "witnesses": [{"point": [str(v) for v in x], "value": str(val)} for x, val in self.witnesses],
        }


def _axis_probes(n: int, reach: int):
    yield (Fraction(0),) * n
    for s in range(1, reach + 1):
        for i in range(n):
            for sg in (1, -1):
                x = [Fraction(0)] * n
                x[i] = Fraction(sg * s)
                yield tuple(x)


def _even_positive(P: MultiPoly) -> int:
    """+1 if every term is a positive even monomial, -1 if all negative, else 0."""
    signs = {sign(c) for _, c in P.items()}
    if len(signs) != 1 or any(k % 2 for e, _ in P.items() for k in e):
        return 0
    return signs.pop()


def _line_witnesses(P: MultiPoly, base, direction):
    """Exact opposite-sign pair on a line, taken between consecutive real roots."""
    u = restrict_to_line(P, base, direction)
    if len(u) <= 1:
        return None
    ivs = isolate_real_roots(u)
    cuts = sorted({iv[0] for iv in ivs} | {iv[1] for iv in ivs})
    if not cuts:
        return None
    probes = [cuts[0] - 1] + [(a + b) / 2 for a, b in zip(cuts, cuts[1:])] + [cuts[-1] + 1]
    seen: dict[int, Fraction] = {}
    for s in probes:
        v = ueval(u, s)
        if v and sign(v) not in seen:
            seen[sign(v)] = s
        if len(seen) == 2:
            pts = [tuple(b + seen[k] * d for b, d in zip(base, direction)) for k in (1, -1)]
            return pts
    return None


def _lattice(rng: random.Random, n: int, radius: int = 6, den: int = 4):
    return tuple(Fraction(rng.randint(-radius * den, radius * den), den) for _ in range(n))


def _direction(rng: random.Random, n: int, span: int = 5):
    while True:
        v = tuple(Fraction(rng.randint(-span, span)) for _ in range(n))
        if any(v):
            return v


def _gradient_escape(P: MultiPoly, z) -> list | None:
    """At an exact zero with nonzero gradient, step both ways along the gradient."""
    g = [evaluate(d, z) for d in P.gradient()]
    if not any(g):
        return None
    h = Fraction(1)
    for _ in range(60):
        a = tuple(x + h * gi for x, gi in zip(z, g))
        b = tuple(x - h * gi for x, gi in zip(z, g))
        va, vb = evaluate(P, a), evaluate(P, b)
        if va * vb < 0:
            return [a, b] if va > 0 else [b, a]
        h /= 2
    return None


def is_real_principal(P: MultiPoly, budget: int = 64, seed: int = 0) -> RealIdealVerdict:
    """Classify the principal ideal ``(P)`` as real, not real, or undecided.

    Stages: axis and lattice point probes; restrictions to seeded rational
    lines with sign checks between consecutive roots; a syntactic test for
    positive combinations of even monomials; finally exact rational zeros on
    lines where the gradient is either nonzero (which yields a sign change)
    or zero (heuristic evidence of a non-real ideal).
    """
    if P.is_constant():
        raise ValueError("P must be nonconstant")
    n = P.num_vars
    found: dict[int, tuple] = {}

    def note(x):
        v = evaluate(P, x)
        if v and sign(v) not in found:
            found[sign(v)] = (x, v)
        return len(found) == 2

    def real(criterion: str, detail: str = "") -> RealIdealVerdict:
        return RealIdealVerdict(REAL, criterion, (found[1], found[-1]), False, detail)

    for x in _axis_probes(n, 3):
        if note(x):
            return real("sign_change", "axis probe")
    rng = random.Random(seed)
    for _ in range(budget):
        if note(_lattice(rng, n)):
            return real("sign_change", "lattice probe")
    for _ in range(budget):
        pair = _line_witnesses(P, _lattice(rng, n), _direction(rng, n))
        if pair:
            for x in pair:
                note(x)
            return real("sign_change", "line restriction")
    s = _even_positive(P)
    if s:
        return RealIdealVerdict(
            NOT_REAL,
            "no_sign_change",
            (found[s],) if s in found else (),
            False,
            "positive combination of even monomials: P never changes sign",
        )
    zeros = 0
    flat = 0
    for _ in range(budget):
        base, d = _lattice(rng, n), _direction(rng, n)
        u = restrict_to_line(P, base, d)
        if not u:
            continue
        for r in rational_roots(u):
            z = tuple(b + r * v for b, v in zip(base, d))
            zeros += 1
            pair = _gradient_escape(P, z)
            if pair:
                for x in pair:
                    note(x)
                if len(found) == 2:
                    return real("gradient_nonvanishing", "sign change next to a smooth zero")
            else:
                flat += 1
    if zeros and flat == zeros:
        return RealIdealVerdict(
            NOT_REAL,
            "gradient_vanishes_on_zeros",
            (),
            True,
            f"gradient vanished at all {zeros} located zeros and no sign change was found",
        )
    return RealIdealVerdict(UNKNOWN, "budget_exhausted", tuple(found.values()), True, f"{zeros} zeros located")


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str  # irreducible_likely | reducible | unknown
    factors: tuple[MultiPoly, ...] = ()
    detail: str = ""


def _monomial_content(P: MultiPoly) -> tuple[list[MultiPoly], MultiPoly]:
    n = P.num_vars
    low = [min(e[i] for e, _ in P.items()) for i in range(n)]
    if not any(low):
        return [], P
    factors = []
    for i, k in enumerate(low):
        factors.extend([MultiPoly.variable(i, n)] * k)
    shift = tuple(low)
    rest = MultiPoly(n, {tuple(a - b for a, b in zip(e, shift)): c for e, c in P.items()})
    return factors, rest


def _linear_factor(P: MultiPoly, rng: random.Random, tries: int) -> MultiPoly | None:
    """A rational linear factor found through rational roots on three parallel lines."""
    n = P.num_vars
    for _ in range(tries):
        d = _direction(rng, n)
        b0 = _lattice(rng, n)
        shifts = [_direction(rng, n) for _ in range(n - 1)]
        bases = [b0] + [tuple(a + s for a, s in zip(b0, w)) for w in shifts]
        roots = []
        for b in bases:
            u = restrict_to_line(P, b, d)
            if not u:
                break
            roots.append([tuple(bi + r * di for bi, di in zip(b, d)) for r in rational_roots(u)])
        else:
            for combo in product(*roots):
                rows = [[Fraction(1), *x] for x in combo]
                ns = nullspace(rows, n + 1)
                if len(ns) != 1:
                    continue
                L = MultiPoly(n, {(0,) * n: ns[0][0], **{tuple(int(j == i) for j in range(n)): ns[0][i + 1] for i in range(n)}})
                if L.is_constant():
                    continue
                L = L.primitive()
                if divmod_poly(P, L)[1].is_zero():
                    return L
    return None


def irreducibility_heuristic(P: MultiPoly, seed: int = 0, tries: int = 8) -> IrreducibilityVerdict:
    """Look for monomial and rational linear factors; only exact divisions count as witnesses."""
    if P.is_constant():
        raise ValueError("P must be nonconstant")
    if P.degree() == 1:
        return IrreducibilityVerdict("irreducible_likely", (P,), "linear")
    rng = random.Random(seed)
    factors, rest = _monomial_content(P)
    saw_rational_zero = False
    while not rest.is_constant() and rest.degree() > 1:
        L = _linear_factor(rest, rng, tries)
        if L is None:
            break
        factors.append(L)
        rest = rest / L
    if not rest.is_constant():
        factors.append(rest.primitive() if rest.degree() > 0 else rest)
    if len(factors) > 1:
        check = MultiPoly.constant(1, P.num_vars)
        for f in factors:
            check = check * f
        # the product agrees with P up to a nonzero constant by construction
        assert divmod_poly(P, check)[1].is_zero()
        return IrreducibilityVerdict("reducible", tuple(factors), "exact division")
    for _ in range(tries):
        u = restrict_to_line(P, _lattice(rng, P.num_vars), _direction(rng, P.num_vars))
        if u and rational_roots(u):
            saw_rational_zero = True
            break
    if saw_rational_zero:
        return IrreducibilityVerdict("unknown", (P,), "rational zeros found but no linear factor")
    return IrreducibilityVerdict("irreducible_likely", (P,), "no witness within budget")


@dataclass
class RealifyEntry:
    original: MultiPoly
    verdict: RealIdealVerdict
    replacements: list[MultiPoly] = field(default_factory=list)
    direction: tuple | None = None
    flags: list[str] = field(default_factory=list)


def _members(A) -> list[MultiPoly]:
    out = []
    for a in A:
        if isinstance(a, FactoredPoly):
            out.extend(f for f, _ in a.factors)
        elif isinstance(a, MultiPoly):
            out.append(a)
        else:
            raise TypeError("family members must be MultiPoly or FactoredPoly")
    for p in out:
        if p.is_constant():
            raise ValueError("family members must be nonconstant")
    return out


def realify_with_report(
    A, seed: int = 0, direction: Sequence | None = None, budget: int = 64
) -> tuple[list[MultiPoly], list[RealifyEntry]]:
    """Replace every non-real member by the factors of a directional derivative, recursively.

    Returns the new family and one report entry per member that was
    examined. A member whose derivative is a nonzero constant has an empty
    real zero set and is dropped.
    """
    members = _members(A)
    rng = random.Random(seed)
    out: list[MultiPoly] = []
    report: list[RealifyEntry] = []
    stack = list(reversed(members))
    while stack:
        P = stack.pop()
        verdict = is_real_principal(P, budget, seed)
        entry = RealifyEntry(P, verdict)
        report.append(entry)
        if verdict.status != NOT_REAL:
            if verdict.status == UNKNOWN:
                entry.flags.append("unknown classification, passed through")
            out.append(P)
            continue
        if verdict.heuristic:
            entry.flags.append("non-real verdict is heuristic")
        G = None
        v = tuple(direction) if direction is not None else None
        for _ in range(20):
            if v is None:
                v = _direction(rng, P.num_vars, 3)
            G = directional_derivative(P, v)
            if not G.is_zero():
                break
            v = None
        if G is None or G.is_zero():
            entry.flags.append("no direction with nonzero derivative found; passed through")
            out.append(P)
            continue
        entry.direction = v
        if G.is_constant():
            entry.flags.append("empty real zero set, member dropped")
            continue
        split = irreducibility_heuristic(G.primitive(), seed)
        entry.replacements = [f.primitive() for f in split.factors if not f.is_constant()]
        stack.extend(reversed(entry.replacements))
    return out, report


def realify_family(A, seed: int = 0, direction: Sequence | None = None, budget: int = 64) -> list[MultiPoly]:
    return realify_with_report(A, seed, direction, budget)[0]


def hat_poly_with_report(P: FactoredPoly, seed: int = 0, budget: int = 64):
    kept = []
    verdicts = []
    for f, m in P.factors:
        v = is_real_principal(f, budget, seed)
        verdicts.append((f, v))
        if v.status != NOT_REAL:
            kept.append((f, m))
    return FactoredPoly(tuple(kept)), verdicts


def hat_poly(P: FactoredPoly, seed: int = 0, budget: int = 64) -> FactoredPoly:
    """Keep the factors generating real ideals (unknown ones are kept too); 1 if none survive."""
    return hat_poly_with_report(P, seed, budget)[0]
