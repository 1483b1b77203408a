"""Dense univariate polynomials over Q and Sturm-sequence root isolation.

A univariate polynomial is a list of Fractions, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .poly import MultiPoly, as_fraction, sign

UPoly = list


def trim(a: Sequence) -> UPoly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def udeg(a: UPoly) -> int:
    return len(a) - 1


def uadd(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def uscale(a: UPoly, c) -> UPoly:
    return trim([c * v for v in a])


def umul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def udivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = [Fraction(v) for v in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lb
        q[shift] = f
        for i, v in enumerate(b):
            r[i + shift] -= f * v
        r = trim(r)
    return trim(q), r


def uderiv(a: UPoly) -> UPoly:
    return trim([i * a[i] for i in range(1, len(a))])


def ueval(a: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def umonic(a: UPoly) -> UPoly:
    return [v / a[-1] for v in a] if a else []


def ugcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def squarefree(a: UPoly) -> UPoly:
    """Squarefree part ``a / gcd(a, a')`` (same real roots, all simple)."""
    g = ugcd(a, uderiv(a))
    if len(g) <= 1:
        return umonic(a)
    return umonic(udivmod(a, g)[0])


def sturm_sequence(a: UPoly) -> list[UPoly]:
    """Sturm sequence of the squarefree part of ``a``."""
    f = squarefree(a)
    seq = [f, uderiv(f)]
    while seq[-1]:
        r = udivmod(seq[-2], seq[-1])[1]
        seq.append(uscale(r, -1))
    return [s for s in seq if s]


def sign_variations(values: Sequence) -> int:
    signs = [sign(v) for v in values if v]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(seq: list[UPoly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in ``(lo, hi]``."""
    return sign_variations([ueval(s, lo) for s in seq]) - sign_variations(
        [ueval(s, hi) for s in seq]
    )


def cauchy_bound(a: UPoly) -> Fraction:
    """Every real root has absolute value strictly below this rational."""
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=Fraction(0))


def isolate_real_roots(a: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, each holding exactly one real root.

    A root that happens to be hit exactly by a bisection point is returned as
    the degenerate interval ``(r, r)``. Otherwise intervals are open at the
    left and closed at the right, and the squarefree part takes opposite
    nonzero signs at the two endpoints.
    """
    a = trim([as_fraction(c) for c in a])
    if not a:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if len(a) == 1:
        return []
    seq = sturm_sequence(a)
    f = seq[0]
    B = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, count_roots(seq, -B, B))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and ueval(f, hi) != 0:
            out.append((lo, hi))
            continue
        if n == 1:
            out.append((hi, hi))
            continue
        mid = (lo + hi) / 2
        left = count_roots(seq, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    return [_clear_left_endpoint(seq, iv) for iv in sorted(out)]


def _clear_left_endpoint(seq: list[UPoly], iv: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    # the left endpoint may be a neighbouring root; move it inwards
    f = seq[0]
    lo, hi = iv
    while lo != hi and ueval(f, lo) == 0:
        mid = (lo + hi) / 2
        if ueval(f, mid) == 0:
            return (mid, mid)
        if count_roots(seq, mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def refine_root(a: UPoly, iv: tuple[Fraction, Fraction], width) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of the squarefree part until narrower than ``width``."""
    f = squarefree(trim(a))
    lo, hi = iv
    if lo == hi:
        return iv
    width = as_fraction(width)
    s_hi = sign(ueval(f, hi))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign(ueval(f, mid))
        if s == 0:
            return (mid, mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def rational_roots(a: UPoly) -> list[Fraction]:
    """All rational roots, found by isolating, refining and denominator-bounded rounding."""
    a = trim([as_fraction(c) for c in a])
    if len(a) <= 1:
        return []
    den = lcm(*(c.denominator for c in a))
    ints = [int(c * den) for c in a]
    lead = abs(ints[-1])
    # two rationals with denominators <= lead differ by at least 1/lead^2
    width = Fraction(1, 4 * lead * lead)
    roots = []
    for iv in isolate_real_roots(a):
        lo, hi = refine_root(a, iv, width)
        cand = ((lo + hi) / 2).limit_denominator(lead)
        if ueval(a, cand) == 0:
            roots.append(cand)
    return roots


def restrict_to_line(p: MultiPoly, base: Sequence, direction: Sequence) -> UPoly:
    """Univariate polynomial ``s -> p(base + s * direction)``."""
    b = [as_fraction(v) for v in base]
    v = [as_fraction(c) for c in direction]
    if len(b) != p.num_vars or len(v) != p.num_vars:
        raise ValueError("line dimension does not match the polynomial")
    lines = [[bi, vi] for bi, vi in zip(b, v)]
    pows: list[dict[int, UPoly]] = [{0: [Fraction(1)]} for _ in lines]

    def power(i: int, k: int) -> UPoly:
        if k not in pows[i]:
            pows[i][k] = umul(power(i, k - 1), trim(lines[i]))
        return pows[i][k]

    out: UPoly = []
    for e, c in p.items():
        t: UPoly = [c]
        for i, k in enumerate(e):
            if k:
                t = umul(t, power(i, k))
        out = uadd(out, t)
    return out


def isolate_real_roots_on_line(p: MultiPoly, base: Sequence, direction: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals, in the line parameter ``s``, for the real roots of ``p`` on a line.

    The line is ``base + s * direction``.
    """
    u = restrict_to_line(p, base, direction)
    if not u:
        raise ValueError("polynomial vanishes identically on the line")
    return isolate_real_roots(u)
