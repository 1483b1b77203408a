"""Text format for polynomials.

Canonical form is a ``" + "``-joined list of ``c * x1^a1 x2^a2 ...`` terms with
exponent vectors in ascending lexicographic order, coefficients written as
``p/q``. The parser is more forgiving: it accepts ``-``, ``*``, ``^`` or
``**``, juxtaposition, decimals and parentheses.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import MultiPoly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>x\d+)|(?P<pow>\*\*|\^)|(?P<op>[-+*()]))"
)


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: MultiPoly, first_index: int = 1) -> str:
    """Canonical serialization; variable ``i`` (0-based) prints as ``x{i + first_index}``."""
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(e for e, _ in p.items()):
        c = p.coefficient(e)
        mono = " ".join(
            f"x{i + first_index}" if a == 1 else f"x{i + first_index}^{a}"
            for i, a in enumerate(e)
            if a
        )
        parts.append(_fmt_coef(c) if not mono else f"{_fmt_coef(c)} * {mono}")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str, num_vars: int, first_index: int):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.num_vars = num_vars
        self.first_index = first_index

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str]]:
        out = []
        i = 0
        text = text.strip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ValueError(f"unexpected character {text[i]!r} at {i} in {text!r}")
            kind = m.lastgroup
            out.append((kind, m.group(kind)))
            i = m.end()
            while i < len(text) and text[i].isspace():
                i += 1
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                p = p * self.unary()
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                p = p * self.unary()
            else:
                return p

    def unary(self) -> MultiPoly:
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "pow":
            self.take()
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise ValueError(f"exponent must be a nonnegative integer, got {val!r}")
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.constant(Fraction(val), self.num_vars)
        if kind == "var":
            idx = int(val[1:]) - self.first_index
            if not 0 <= idx < self.num_vars:
                raise ValueError(f"variable {val} outside x{self.first_index}..x{self.num_vars - 1 + self.first_index}")
            return MultiPoly.variable(idx, self.num_vars)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        raise ValueError(f"unexpected token {val!r}")


def parse_poly(text: str, num_vars: int = 3, first_index: int = 1) -> MultiPoly:
    """Parse polynomial text such as ``"x1^2 + x2^2 + x3^2 - 1"``."""
    return _Parser(text, num_vars, first_index).parse()
