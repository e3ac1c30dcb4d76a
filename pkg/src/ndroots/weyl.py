"""The Weyl algebra ``D[s]`` in x-left normal form.

Every stored term ``(beta, alpha, k) -> c`` means ``c * x^beta d^alpha s^k``;
``s`` is central.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .polynomial import (
    DimensionError,
    MultiIndex,
    Polynomial,
    Scalar,
    format_terms,
    mi_abs,
    mi_factorial,
    mi_leq,
    mi_sub,
    mi_unit,
    mi_zero,
)

Key = Tuple[MultiIndex, MultiIndex, int]
Generator = Union[Tuple[str, int], Tuple[str], Scalar]


def _falling(a: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= a - t
    return out


class WeylOperator:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Key, Scalar]] = None):
        self.n = n
        clean: Dict[Key, Fraction] = {}
        for (beta, alpha, k), c in (terms or {}).items():
            beta, alpha = tuple(beta), tuple(alpha)
            if len(beta) != n or len(alpha) != n:
                raise DimensionError(f"multi-index length differs from {n}")
            if k < 0 or min(beta + alpha, default=0) < 0:
                raise ValueError("negative exponent")
            key = (beta, alpha, int(k))
            clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def _raw(cls, n: int, terms: Dict[Key, Fraction]) -> "WeylOperator":
        op = cls.__new__(cls)
        op.n = n
        op._terms = terms
        return op

    # generators
    @classmethod
    def scalar(cls, n: int, c: Scalar = 1) -> "WeylOperator":
        c = Fraction(c)
        z = mi_zero(n)
        return cls._raw(n, {(z, z, 0): c} if c else {})

    @classmethod
    def x(cls, n: int, i: int) -> "WeylOperator":
        return cls._raw(n, {(mi_unit(n, i - 1), mi_zero(n), 0): Fraction(1)})

    @classmethod
    def d(cls, n: int, i: int) -> "WeylOperator":
        return cls._raw(n, {(mi_zero(n), mi_unit(n, i - 1), 0): Fraction(1)})

    @classmethod
    def s(cls, n: int) -> "WeylOperator":
        z = mi_zero(n)
        return cls._raw(n, {(z, z, 1): Fraction(1)})

    @classmethod
    def monomial(cls, beta: MultiIndex, alpha: MultiIndex, k: int = 0, c: Scalar = 1) -> "WeylOperator":
        return cls(len(beta), {(tuple(beta), tuple(alpha), k): c})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "WeylOperator":
        z = mi_zero(p.n)
        return cls._raw(p.n, {(e, z, 0): c for e, c in p.items()})

    # inspection
    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, beta: MultiIndex, alpha: MultiIndex, k: int = 0) -> Fraction:
        return self._terms.get((tuple(beta), tuple(alpha), k), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def has_s(self) -> bool:
        return any(k for (_, _, k) in self._terms)

    def s_degree(self) -> int:
        return max((k for (_, _, k) in self._terms), default=0)

    def order(self) -> int:
        return max((mi_abs(a) for (_, a, _) in self._terms), default=0)

    # arithmetic
    def _check(self, other: "WeylOperator") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} != {other.n}")

    def _coerce(self, other):
        if isinstance(other, WeylOperator):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return WeylOperator.scalar(self.n, other)
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionError("ambient dimensions differ")
            return WeylOperator.from_polynomial(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeylOperator._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "WeylOperator":
        c = Fraction(c)
        if not c:
            return WeylOperator.scalar(self.n, 0)
        return WeylOperator._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, Fraction] = {}
        for (b1, a1, k1), c1 in self._terms.items():
            for (b2, a2, k2), c2 in other._terms.items():
                # d^a1 x^b2 = sum_g prod_i C(a1_i, g_i) (b2_i)_(g_i) x^(b2-g) d^(a1-g)
                ranges = [range(min(p, q) + 1) for p, q in zip(a1, b2)]
                for g in product(*ranges):
                    w = c1 * c2
                    for p, q, gi in zip(a1, b2, g):
                        w *= comb(p, gi) * _falling(q, gi)
                    beta = tuple(x + y - gi for x, y, gi in zip(b1, b2, g))
                    alpha = tuple(x + y - gi for x, y, gi in zip(a1, a2, g))
                    key = (beta, alpha, k1 + k2)
                    out[key] = out.get(key, 0) + w
        return WeylOperator._raw(self.n, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k: int) -> "WeylOperator":
        out = WeylOperator.scalar(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WeylOperator.scalar(self.n, other)
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def sorted_terms(self):
        def key(item):
            (b, a, k), _ = item
            return (-(mi_abs(b) + mi_abs(a) + k), tuple(-x for x in b), tuple(-x for x in a), -k)
        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        rows = []
        for (b, a, k), c in self.sorted_terms():
            rows.append((c, term_str(b, a, k)))
        return format_terms(rows)

    def __repr__(self) -> str:
        return f"WeylOperator({self.n}, {str(self)!r})"

    def to_json(self):
        return [
            {"coeff": f"{c.numerator}/{c.denominator}", "x": list(b), "d": list(a), "s": k}
            for (b, a, k), c in self.sorted_terms()
        ]


def term_str(beta: MultiIndex, alpha: MultiIndex, k: int = 0) -> str:
    parts = []
    for i, e in enumerate(beta, start=1):
        if e:
            parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    for i, e in enumerate(alpha, start=1):
        if e:
            parts.append(f"d{i}" if e == 1 else f"d{i}^{e}")
    if k:
        parts.append("s" if k == 1 else f"s^{k}")
    return "*".join(parts)


def generator(n: int, g: Generator) -> WeylOperator:
    if isinstance(g, (int, Fraction)):
        return WeylOperator.scalar(n, g)
    name = g[0]
    if name == "x":
        return WeylOperator.x(n, g[1])
    if name == "d":
        return WeylOperator.d(n, g[1])
    if name == "s":
        return WeylOperator.s(n)
    raise ValueError(f"unknown generator {g!r}")


def normalize(word: Iterable[Generator], n: int) -> WeylOperator:
    """Product of a word of generators, rewritten into x-left normal form.

    Generators are ``("x", i)``, ``("d", i)``, ``("s",)`` or a rational scalar.
    """
    out = WeylOperator.scalar(n, 1)
    for g in word:
        out = out * generator(n, g)
    return out


# -- anti-normal ordering ----------------------------------------------------

def to_antinormal(beta: MultiIndex, alpha: MultiIndex) -> Dict[Tuple[MultiIndex, MultiIndex], Fraction]:
    """Rewrite ``x^beta d^alpha`` as a combination of ``d^a x^g``.

    Keys are ``(d-exponent, x-exponent)``.  Sum over ``0 <= g <= beta`` with
    ``g + alpha >= beta``; the coefficient of ``d^(alpha-beta+g) x^g`` is
    ``(-1)^|beta-g| alpha! beta! / (g! (beta-g)! (alpha-beta+g)!)``.
    """
    beta, alpha = tuple(beta), tuple(alpha)
    if len(beta) != len(alpha):
        raise DimensionError("multi-index lengths differ")
    ranges = [range(max(0, b - a), b + 1) for b, a in zip(beta, alpha)]
    num = mi_factorial(alpha) * mi_factorial(beta)
    out = {}
    for g in product(*ranges):
        bg = mi_sub(beta, g)
        dexp = tuple(a - b + gi for a, b, gi in zip(alpha, beta, g))
        den = mi_factorial(g) * mi_factorial(bg) * mi_factorial(dexp)
        out[(dexp, g)] = Fraction((-1) ** mi_abs(bg) * num, den)
    return out


def operator_to_antinormal(P: WeylOperator) -> Dict[Tuple[MultiIndex, MultiIndex, int], Fraction]:
    """Anti-normal form of a whole operator: keys ``(d-exp, x-exp, s-power)``."""
    out: Dict[Tuple[MultiIndex, MultiIndex, int], Fraction] = {}
    for (beta, alpha, k), c in P.items():
        for (a, g), w in to_antinormal(beta, alpha).items():
            key = (a, g, k)
            out[key] = out.get(key, 0) + c * w
    return {k: v for k, v in out.items() if v}


def from_antinormal(terms: Mapping, n: int) -> WeylOperator:
    """Re-expand ``{(d-exp, x-exp[, s]) : c}`` into x-left normal form."""
    out = WeylOperator.scalar(n, 0)
    for key, c in terms.items():
        a, g = key[0], key[1]
        k = key[2] if len(key) > 2 else 0
        z = mi_zero(n)
        left = WeylOperator._raw(n, {(z, tuple(a), k): Fraction(c)})
        right = WeylOperator._raw(n, {(tuple(g), z, 0): Fraction(1)})
        out = out + left * right
    return out


# -- graded parts and the D<x> criteria -------------------------------------

def graded_parts(P: WeylOperator) -> Dict[int, WeylOperator]:
    """Split by ``|alpha| - |beta|``; the parts sum back to ``P``."""
    parts: Dict[int, Dict[Key, Fraction]] = {}
    for key, c in P.items():
        beta, alpha, _ = key
        parts.setdefault(mi_abs(alpha) - mi_abs(beta), {})[key] = c
    return {k: WeylOperator._raw(P.n, t) for k, t in sorted(parts.items())}


@dataclass
class IdealCheck:
    """Outcome of the left-ideal ``D<x1..xn>`` membership test.

    ``sums`` holds, per graded part ``k >= 0``, the value of
    ``sum_{alpha-beta=gamma} (-1)^|alpha| alpha! lambda_{beta,alpha}`` for each
    ``(gamma, s-power)`` that occurs; ``failures`` lists the nonzero ones.
    """

    holds: bool
    grades: List[int]
    sums: Dict[int, Dict[Tuple[MultiIndex, int], Fraction]] = field(default_factory=dict)
    failures: List[Tuple[int, MultiIndex, int, Fraction]] = field(default_factory=list)

    def to_json(self):
        return {
            "in_ideal": self.holds,
            "grades": self.grades,
            "failures": [
                {"k": k, "gamma": list(g), "s_power": sp, "sum": f"{v.numerator}/{v.denominator}"}
                for k, g, sp, v in self.failures
            ],
        }


def gamma_sums(P: WeylOperator) -> Dict[Tuple[MultiIndex, int], Fraction]:
    """``(gamma, s-power) -> sum_{alpha - beta = gamma} (-1)^|alpha| alpha! lambda``."""
    sums: Dict[Tuple[MultiIndex, int], Fraction] = {}
    for (beta, alpha, k), c in P.items():
        if not mi_leq(beta, alpha):
            continue
        gamma = mi_sub(alpha, beta)
        w = (-1) ** mi_abs(alpha) * mi_factorial(alpha) * c
        sums[(gamma, k)] = sums.get((gamma, k), Fraction(0)) + w
    return sums


def in_ideal_Dx(P: WeylOperator) -> IdealCheck:
    """Decide ``P in D<x1..xn>`` (left ideal generated by the coordinates).

    Mixed operators are split into graded parts first; parts with negative
    grade always pass.  The ``s``-powers are treated independently since
    ``s`` is central.
    """
    parts = graded_parts(P)
    res = IdealCheck(holds=True, grades=list(parts))
    for k, part in parts.items():
        if k < 0:
            continue
        sums = gamma_sums(part)
        res.sums[k] = sums
        for (gamma, sp), v in sorted(sums.items()):
            if v:
                res.failures.append((k, gamma, sp, v))
    res.holds = not res.failures
    return res


def sigma_invariant(P: WeylOperator) -> Fraction:
    """``sum_alpha (-1)^|alpha| alpha! lambda_{alpha,alpha}`` over the grade-0 part."""
    if P.has_s():
        raise ValueError("sigma_invariant expects an s-free operator")
    total = Fraction(0)
    for (beta, alpha, _), c in P.items():
        if beta == alpha:
            total += (-1) ** mi_abs(alpha) * mi_factorial(alpha) * c
    return total


def euler_operator(n: int, weights: Optional[Iterable[Scalar]] = None) -> WeylOperator:
    """``sum_i w_i x_i d_i`` (all weights 1 by default)."""
    ws = list(weights) if weights is not None else [1] * n
    out = WeylOperator.scalar(n, 0)
    for i, w in enumerate(ws, start=1):
        out = out + (WeylOperator.x(n, i) * WeylOperator.d(n, i)).scale(w)
    return out


def divergence_operator(n: int, weights: Iterable[Scalar]) -> WeylOperator:
    """``sum_i c_i d_i x_i`` in normal form."""
    out = WeylOperator.scalar(n, 0)
    for i, w in enumerate(weights, start=1):
        out = out + (WeylOperator.d(n, i) * WeylOperator.x(n, i)).scale(w)
    return out
