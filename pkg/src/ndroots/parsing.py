"""Text input: sums of products in ``x1..xn``, ``d1..dn``, ``s`` and rationals.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' INT)?
    atom   := RATIONAL | 'x'INT | 'd'INT | 's' | '(' expr ')'

Products are evaluated left to right in the Weyl algebra, so ``d1*x1``
parses to ``x1*d1 + 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .polynomial import Polynomial, SPolynomial, mi_zero
from .weyl import WeylOperator


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>[xd])(?P<idx>\d+)|(?P<s>s)|(?P<op>[-+*^()]))"
)


def tokenize(text: str) -> List[Tuple[str, object]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("gen"):
            idx = int(m.group("idx"))
            if idx < 1:
                raise ParseError("variable indices start at 1")
            out.append((m.group("gen"), idx))
        elif m.group("s"):
            out.append(("s", None))
        else:
            out.append(("op", m.group("op")))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def max_index(text: str) -> int:
    return max((i for kind, i in tokenize(text) if kind in ("x", "d")), default=0)


class _Parser:
    def __init__(self, tokens, n: int):
        self.toks = tokens
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r}")

    def expr(self) -> WeylOperator:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            out = out + self.term().scale(sign)
        return out

    def term(self) -> WeylOperator:
        out = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                out = out * self.factor()
            elif tok[0] in ("num", "x", "d", "s") or tok == ("op", "("):
                out = out * self.factor()
            else:
                return out

    def factor(self) -> WeylOperator:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> WeylOperator:
        kind, val = self.take()
        n = self.n
        if kind == "num":
            return WeylOperator.scalar(n, val)
        if kind in ("x", "d"):
            if val > n:
                raise ParseError(f"{kind}{val} exceeds ambient dimension {n}")
            return WeylOperator.x(n, val) if kind == "x" else WeylOperator.d(n, val)
        if kind == "s":
            return WeylOperator.s(n)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected end of input" if kind is None else f"unexpected token {val!r}")


def parse_operator(text: str, n: Optional[int] = None) -> WeylOperator:
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    if n is None:
        n = max((i for kind, i in toks if kind in ("x", "d")), default=0) or 1
    p = _Parser(toks, n)
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input after token {p.i}")
    return out


def parse_polynomial(text: str, n: Optional[int] = None) -> Polynomial:
    op = parse_operator(text, n)
    z = mi_zero(op.n)
    terms = {}
    for (beta, alpha, k), c in op.items():
        if alpha != z or k:
            raise ParseError("polynomial may only involve x1..xn")
        terms[beta] = c
    return Polynomial(op.n, terms)


def parse_univariate_s(text: str) -> Tuple[Fraction, ...]:
    """Coefficients (constant first) of a polynomial in ``s`` alone."""
    op = parse_operator(text, 1)
    coeffs = {}
    for (beta, alpha, k), c in op.items():
        if any(beta) or any(alpha):
            raise ParseError("expected a polynomial in s only")
        coeffs[k] = c
    top = max(coeffs, default=-1)
    return tuple(coeffs.get(k, Fraction(0)) for k in range(top + 1))


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc


def univariate_str(coeffs, var: str = "s") -> str:
    from .polynomial import format_terms

    rows = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c:
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            rows.append((Fraction(c), mono))
    return format_terms(rows)


def spoly_from_univariate(n: int, coeffs) -> SPolynomial:
    return SPolynomial.from_univariate(n, coeffs)
