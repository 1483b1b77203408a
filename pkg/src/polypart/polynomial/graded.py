"""Degree-e slices of principal ideals in the homogeneous coordinate ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .linalg import rank
from .poly import Exponent, MultiPoly, homogenize, monomials_of_degree


@dataclass(frozen=True)
class GradedSliceBasis:
    """Bases for ``(P^h)_e`` and for a monomial complement ``V`` of it.

    ``poly`` is the affine P; ``homogeneous`` is its homogenization with
    ``x0`` as first variable. Elements of both bases are homogeneous of degree
    ``ambient_degree`` in ``num_vars + 1`` variables.
    """

    ambient_degree: int
    poly: MultiPoly
    homogeneous: MultiPoly
    ideal_basis: tuple[MultiPoly, ...]
    complement_basis: tuple[MultiPoly, ...]
    complement_exponents: tuple[Exponent, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.poly.num_vars

    def affine_complement_exponents(self) -> list[Exponent]:
        """Affine exponent vectors (x0 dropped) of the complement monomials."""
        return [e[1:] for e in self.complement_exponents]

    def affine_complement(self) -> list[MultiPoly]:
        n = self.poly.num_vars
        return [MultiPoly.monomial(e, 1) for e in self.affine_complement_exponents()] if n else []

    def certify(self) -> bool:
        """Exact rank check that ideal and complement together span the whole slice.

        The complement rows are unit vectors, so the stacked rank equals
        ``|complement|`` plus the rank of the ideal rows restricted to the
        remaining columns.
        """
        monos = monomials_of_degree(self.dim + 1, self.ambient_degree)
        comp = set(self.complement_exponents)
        cols = [m for m in monos if m not in comp]
        rows = [[b.coefficient(m) for m in cols] for b in self.ideal_basis]
        r = rank(rows) if rows and cols else 0
        total = len(self.complement_exponents) + r
        return r == len(self.ideal_basis) and total == comb(self.ambient_degree + self.dim, self.dim)

    def reduce(self, q: MultiPoly) -> MultiPoly:
        """Normal form of an affine ``q`` (deg <= e) modulo the ideal slice.

        ``q`` is homogenized to degree ``e`` and every term divisible by the
        leading monomial of ``P^h`` is cancelled; the result is zero exactly
        when ``q^h`` lies in ``(P^h)_e``.
        """
        qh = homogenize(q, self.ambient_degree)
        return normal_form(qh, self.homogeneous)


def normal_form(q: MultiPoly, p: MultiPoly) -> MultiPoly:
    from .poly import divmod_poly

    return divmod_poly(q, p)[1]


def graded_slice(P: MultiPoly, e: int) -> GradedSliceBasis:
    """Ideal slice ``(P^h)_e`` and the lexicographically least monomial complement.

    Ideal basis: ``x^mu * P^h`` for all monomials of degree ``e - D``. With
    ``lm`` the lex-largest monomial of ``P^h``, the rows have distinct leading
    monomials ``x^mu * lm``, so elimination leaves exactly the monomials not
    divisible by ``lm`` as pivot-free columns; taking them greedily in
    ascending lex order gives the complement.
    """
    if P.is_zero():
        raise ValueError("P must be nonzero")
    if e < 0:
        raise ValueError("degree must be nonnegative")
    D = P.degree()
    Ph = homogenize(P)
    nv = P.num_vars + 1
    ideal = []
    if e >= D:
        for mu in monomials_of_degree(nv, e - D):
            ideal.append(MultiPoly.monomial(mu, 1) * Ph)
    lm = Ph.leading_exponent()
    comp_exps = tuple(
        m
        for m in monomials_of_degree(nv, e)
        if not (e >= D and all(a >= b for a, b in zip(m, lm)))
    )
    return GradedSliceBasis(
        ambient_degree=e,
        poly=P,
        homogeneous=Ph,
        ideal_basis=tuple(ideal),
        complement_basis=tuple(MultiPoly.monomial(m, 1) for m in comp_exps),
        complement_exponents=comp_exps,
    )
