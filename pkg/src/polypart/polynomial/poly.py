"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal/``p/q`` strings and floats exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not valid coordinates")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    # numpy scalars and friends
    if hasattr(value, "item"):
        return as_fraction(value.item())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def sign(x) -> int:
    return (x > 0) - (x < 0)


def monomials_of_degree(num_vars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree exactly ``degree``, ascending lex."""
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


def monomials_up_to(num_vars: int, degree: int) -> list[Exponent]:
    """Exponent vectors of total degree <= ``degree``, graded then descending lex.

    With three variables this lists ``1, x1, x2, x3, x1^2, x1 x2, ...``.
    """
    out = []
    for deg in range(degree + 1):
        out.extend(sorted(monomials_of_degree(num_vars, deg), reverse=True))
    return out


class MultiPoly:
    """Polynomial in ``num_vars`` variables stored as ``{exponent: Fraction}``.

    Instances are immutable and hashable. Zero coefficients are never stored,
    so the zero polynomial has no terms.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, object] | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        self.num_vars = num_vars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coef in terms.items():
                exp = tuple(int(a) for a in exp)
                if len(exp) != num_vars or min(exp, default=0) < 0:
                    raise ValueError(f"bad exponent vector {exp} for {num_vars} variables")
                c = as_fraction(coef)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value, num_vars: int = 3) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, index: int, num_vars: int = 3) -> "MultiPoly":
        """The coordinate function for 0-based ``index``."""
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range")
        exp = [0] * num_vars
        exp[index] = 1
        return cls._raw(num_vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coef})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.num_vars, Fraction(0))

    def leading_exponent(self) -> Exponent:
        """Lexicographically largest exponent vector."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise ValueError(
                    f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
                )
            return other
        return MultiPoly.constant(as_fraction(other), self.num_vars)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        res = dict(self._terms)
        for e, c in other._terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return MultiPoly._raw(self.num_vars, res)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            if not c:
                return MultiPoly._raw(self.num_vars, {})
            return MultiPoly._raw(self.num_vars, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        res: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                res[e] = res.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.num_vars, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            q, r = divmod_poly(self, other)
            if not r.is_zero():
                raise ArithmeticError("polynomial division is not exact")
            return q
        c = as_fraction(other)
        return self * (1 / c)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def __repr__(self) -> str:
        from .text import to_text

        return f"MultiPoly({to_text(self)!r})"

    def __str__(self) -> str:
        from .text import to_text

        return to_text(self)

    # -- structural helpers ---------------------------------------------

    def scale_to_integer(self) -> tuple[dict[Exponent, int], int]:
        """Return ``(int_terms, den)`` with ``self = int_terms / den``."""
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        return {e: int(c * den) for e, c in self._terms.items()}, den

    def primitive(self) -> "MultiPoly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if self.is_zero():
            return self
        ints, _ = self.scale_to_integer()
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[max(ints)]
        g = g if lead > 0 else -g
        return MultiPoly._raw(self.num_vars, {e: Fraction(v // g) for e, v in ints.items()})

    def partial(self, var: int) -> "MultiPoly":
        res = {}
        for e, c in self._terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                res[tuple(ne)] = c * e[var]
        return MultiPoly._raw(self.num_vars, res)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.num_vars)]

    def substitute(self, var: int, value) -> "MultiPoly":
        """Set variable ``var`` to the rational ``value``; variable count kept."""
        value = as_fraction(value)
        res: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            ne = tuple(ne)
            v = c * value**k
            res[ne] = res.get(ne, 0) + v
        return MultiPoly._raw(self.num_vars, {e: c for e, c in res.items() if c})

    def drop_last_variable(self) -> "MultiPoly":
        """Reinterpret a polynomial free of the last variable in one fewer variable."""
        if self.num_vars < 2:
            raise ValueError("cannot drop the only variable")
        if any(e[-1] for e in self._terms):
            raise ValueError("polynomial depends on the last variable")
        return MultiPoly._raw(self.num_vars - 1, {e[:-1]: c for e, c in self._terms.items()})

    def coefficients_in_last(self) -> list["MultiPoly"]:
        """Coefficients, as polynomials in the remaining variables, of powers of the last variable."""
        n = self.degree_in(self.num_vars - 1)
        out = [dict() for _ in range(n + 1)]
        for e, c in self._terms.items():
            out[e[-1]][e[:-1]] = c
        return [MultiPoly._raw(self.num_vars - 1, t) for t in out]


def _check_point(p: MultiPoly, x: Sequence) -> list[Fraction]:
    if len(x) != p.num_vars:
        raise ValueError(f"point has dimension {len(x)}, polynomial has {p.num_vars} variables")
    return [as_fraction(v) for v in x]


def evaluate(p: MultiPoly, x: Sequence) -> Fraction:
    """Exact value of ``p`` at the rational point ``x``."""
    xs = _check_point(p, x)
    powers: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in xs]
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for i, a in enumerate(e):
            if a:
                pw = powers[i].get(a)
                if pw is None:
                    pw = xs[i] ** a
                    powers[i][a] = pw
                term *= pw
        total += term
    return total


def sign_at(p: MultiPoly, x: Sequence) -> int:
    """Exact sign (-1, 0, +1) of ``p`` at ``x``."""
    return sign(evaluate(p, x))


def _common_denominator_points(points: Sequence[Sequence[Fraction]]) -> list[tuple[list[int], int]]:
    out = []
    for x in points:
        den = 1
        for v in x:
            den = lcm(den, v.denominator)
        out.append(([int(v * den) for v in x], den))
    return out


def signs_at(p: MultiPoly, points: Sequence[Sequence[Fraction]]) -> list[int]:
    """Exact signs of ``p`` at many rational points using integer arithmetic.

    Each point is brought to a common denominator ``L``; then
    ``sign(p(a/L)) = sign(sum c_e a^e L^(deg - |e|))`` with integer ``c_e``.
    """
    if p.is_zero():
        return [0] * len(points)
    ints, _ = p.scale_to_integer()
    deg = p.degree()
    terms = list(ints.items())
    out = []
    for a, den in _common_denominator_points(points):
        if len(a) != p.num_vars:
            raise ValueError("dimension mismatch")
        lpow = [1]
        for _ in range(deg):
            lpow.append(lpow[-1] * den)
        cache: list[dict[int, int]] = [{0: 1} for _ in a]
        total = 0
        for e, c in terms:
            t = c * lpow[deg - sum(e)]
            for i, k in enumerate(e):
                if k:
                    v = cache[i].get(k)
                    if v is None:
                        v = a[i] ** k
                        cache[i][k] = v
                    t *= v
            total += t
        out.append(sign(total))
    return out


def evaluate_float(p: MultiPoly, X):
    """Floating point values at the rows of ``X`` (instrumentation only)."""
    import numpy as np

    X = np.atleast_2d(np.asarray(X, dtype=float))
    if p.is_zero():
        return np.zeros(X.shape[0])
    exps = np.array(list(p._terms.keys()), dtype=float)
    coefs = np.array([float(c) for c in p._terms.values()])
    return np.prod(X[:, None, :] ** exps[None, :, :], axis=2) @ coefs


def directional_derivative(p: MultiPoly, v: Sequence) -> MultiPoly:
    """``sum_i v_i dp/dx_i``."""
    vs = [as_fraction(c) for c in v]
    if len(vs) != p.num_vars:
        raise ValueError("direction length must equal the number of variables")
    if not any(vs):
        raise ValueError("direction vector must be nonzero")
    out = MultiPoly(p.num_vars)
    for i, c in enumerate(vs):
        if c:
            out = out + p.partial(i) * c
    return out


def divmod_poly(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Division with remainder by a single divisor in lex order.

    For a single divisor the remainder is zero exactly when ``g`` divides ``f``.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.num_vars != g.num_vars:
        raise ValueError("variable count mismatch")
    lg = g.leading_exponent()
    lc = g._terms[lg]
    gterms = list(g._terms.items())
    p = dict(f._terms)
    q: dict[Exponent, Fraction] = {}
    r: dict[Exponent, Fraction] = {}
    while p:
        lp = max(p)
        c = p[lp]
        if all(a >= b for a, b in zip(lp, lg)):
            shift = tuple(a - b for a, b in zip(lp, lg))
            factor = c / lc
            q[shift] = q.get(shift, 0) + factor
            for e, cg in gterms:
                ne = tuple(a + b for a, b in zip(e, shift))
                v = p.get(ne, 0) - factor * cg
                if v:
                    p[ne] = v
                else:
                    p.pop(ne, None)
        else:
            r[lp] = c
            del p[lp]
    n = f.num_vars
    return MultiPoly._raw(n, {e: c for e, c in q.items() if c}), MultiPoly._raw(n, r)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    return divmod_poly(f, g)[1].is_zero()


def homogenize(p: MultiPoly, degree: int | None = None) -> MultiPoly:
    """Insert ``x0`` as a new first variable so every term has degree ``degree``.

    ``degree`` defaults to ``deg p``; a larger value multiplies by a power of ``x0``.
    """
    deg = p.degree() if degree is None else degree
    if deg < p.degree():
        raise ValueError("target degree below the polynomial degree")
    deg = max(deg, 0)
    return MultiPoly._raw(
        p.num_vars + 1, {(deg - sum(e),) + e: c for e, c in p.items()}
    )


def dehomogenize(p: MultiPoly) -> MultiPoly:
    """Set ``x0 = 1`` (the first variable) in a homogeneous polynomial."""
    if not p.is_homogeneous():
        raise ValueError("dehomogenize requires a homogeneous polynomial")
    if p.num_vars < 2:
        raise ValueError("need at least two variables")
    res: dict[Exponent, Fraction] = {}
    for e, c in p.items():
        res[e[1:]] = res.get(e[1:], 0) + c
    return MultiPoly._raw(p.num_vars - 1, {e: c for e, c in res.items() if c})


def from_coefficients(num_vars: int, exponents: Sequence[Exponent], coefs: Iterable) -> MultiPoly:
    return MultiPoly(num_vars, dict(zip(exponents, coefs)))


@dataclass(frozen=True)
class FactoredPoly:
    """A polynomial kept as a product of nonconstant factors with multiplicities.

    ``unit`` is the constant in front; the empty product is the constant 1.
    """

    factors: tuple[tuple[MultiPoly, int], ...] = ()
    unit: Fraction = Fraction(1)

    def __post_init__(self):
        fs = tuple((f, int(m)) for f, m in self.factors)
        for f, m in fs:
            if not isinstance(f, MultiPoly):
                raise TypeError("factors must be MultiPoly")
            if f.is_constant():
                raise ValueError("factors must be nonconstant")
            if m < 1:
                raise ValueError("multiplicities must be positive")
        if len({f.num_vars for f, _ in fs}) > 1:
            raise ValueError("factors disagree on the number of variables")
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "unit", as_fraction(self.unit))

    @classmethod
    def of(cls, *factors: MultiPoly | tuple[MultiPoly, int]) -> "FactoredPoly":
        items = [(f, 1) if isinstance(f, MultiPoly) else f for f in factors]
        return cls(tuple(items))

    @property
    def num_vars(self) -> int | None:
        return self.factors[0][0].num_vars if self.factors else None

    def degree(self) -> int:
        return sum(m * f.degree() for f, m in self.factors)

    def expand(self, num_vars: int | None = None) -> MultiPoly:
        n = self.num_vars or num_vars or 3
        out = MultiPoly.constant(self.unit, n)
        for f, m in self.factors:
            out = out * f**m
        return out

    def sign_at(self, x: Sequence) -> int:
        s = sign(self.unit)
        for f, m in self.factors:
            s *= sign_at(f, x) ** m
        return s

    def is_one(self) -> bool:
        return not self.factors and self.unit == 1

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def squarefree_part(p: FactoredPoly) -> FactoredPoly:
    """Drop multiplicities (the factors are trusted to be distinct)."""
    return FactoredPoly(tuple((f, 1) for f, _ in p.factors), p.unit)
