"""Exact sparse multivariate polynomials over the rationals.

Exponent vectors ("multi-indices") are plain tuples of non-negative ints of a
fixed length ``n``.  Coefficients are :class:`fractions.Fraction`.  Every
value is immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

MultiIndex = Tuple[int, ...]
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands live in different ambient dimensions."""


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return self.name


MINUS_INFINITY = _Marker("MINUS_INFINITY")
"""Degree of the zero polynomial."""

ANY_DEGREE = _Marker("ANY_DEGREE")
"""Returned by :func:`is_homogeneous` for the zero polynomial."""


# -- multi-index helpers ----------------------------------------------------

def mi_zero(n: int) -> MultiIndex:
    return (0,) * n


def mi_unit(n: int, i: int) -> MultiIndex:
    """Unit multi-index with a 1 in (0-based) slot ``i``."""
    e = [0] * n
    e[i] = 1
    return tuple(e)


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if len(a) != len(b):
        raise DimensionError(f"multi-index lengths differ: {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if len(a) != len(b):
        raise DimensionError(f"multi-index lengths differ: {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def mi_leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mi_abs(a: MultiIndex) -> int:
    return sum(a)


def mi_factorial(a: MultiIndex) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def mi_range(upper: MultiIndex) -> Iterator[MultiIndex]:
    """All multi-indices ``0 <= g <= upper`` componentwise."""
    return product(*(range(u + 1) for u in upper))


def grlex_key(e: MultiIndex):
    return (sum(e), e)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """A polynomial in ``x1..xn`` with rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping[MultiIndex, Scalar]] = None):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        self.n = n
        clean: Dict[MultiIndex, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # construction
    @classmethod
    def _raw(cls, n: int, terms: Dict[MultiIndex, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(n, {mi_zero(n): c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(n, 1)

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        """The coordinate ``x_i`` (1-based, as written in formulas)."""
        if not 1 <= i <= n:
            raise IndexError(f"variable x{i} outside 1..{n}")
        return cls._raw(n, {mi_unit(n, i - 1): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: Scalar = 1) -> "Polynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def linear_form(cls, coeffs: Iterable[Scalar]) -> "Polynomial":
        coeffs = [_as_fraction(c) for c in coeffs]
        n = len(coeffs)
        return cls._raw(n, {mi_unit(n, i): c for i, c in enumerate(coeffs) if c})

    # inspection
    @property
    def terms(self) -> Dict[MultiIndex, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: MultiIndex) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(mi_zero(self.n), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def leading(self) -> Tuple[MultiIndex, Fraction]:
        """Leading (exponent, coefficient) in graded lexicographic order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def variables(self) -> Tuple[int, ...]:
        """1-based indices of variables that occur."""
        used = set()
        for e in self._terms:
            used.update(i + 1 for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} != {other.n}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

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

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[MultiIndex, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps: MultiIndex, c: Scalar = 1) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(
            self.n, {mi_add(e, exps): v * c for e, v in self._terms.items()}
        )

    def diff(self, i: int, times: int = 1) -> "Polynomial":
        """Partial derivative in ``x_i`` (1-based)."""
        k = i - 1
        out = {}
        for e, c in self._terms.items():
            if e[k] >= times:
                ne = list(e)
                ne[k] -= times
                falling = 1
                for j in range(times):
                    falling *= e[k] - j
                out[tuple(ne)] = c * falling
        return Polynomial._raw(self.n, out)

    def gradient(self):
        return [self.diff(i) for i in range(1, self.n + 1)]

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                v *= _as_fraction(x) ** k
            total += v
        return total

    def compose_linear(self, matrix) -> "Polynomial":
        """Substitute ``x_i -> sum_j matrix[i][j] x_j``."""
        images = [Polynomial.linear_form(row) for row in matrix]
        m = len(matrix[0]) if matrix else 0
        out = Polynomial.zero(m)
        for e, c in self._terms.items():
            t = Polynomial.constant(m, c)
            for img, k in zip(images, e):
                if k:
                    t = t * img ** k
            out = out + t
        return out

    def homogeneous_part(self, deg: int) -> "Polynomial":
        return Polynomial._raw(
            self.n, {e: c for e, c in self._terms.items() if sum(e) == deg}
        )

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # text
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        return format_terms(
            [(c, monomial_str(e)) for e, c in self.sorted_terms()]
        )

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {str(self)!r})"

    def to_json(self):
        return [
            {"coeff": fraction_str(c), "exps": list(e)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, n: Optional[int] = None) -> "Polynomial":
        if isinstance(data, Mapping):
            n = data.get("n", n)
            data = data["terms"]
        terms: Dict[MultiIndex, Fraction] = {}
        for t in data:
            e = tuple(int(x) for x in t["exps"])
            if n is None:
                n = len(e)
            c = _as_fraction(str(t["coeff"]))
            terms[e] = terms.get(e, Fraction(0)) + c
        if n is None:
            raise ValueError("cannot infer ambient dimension of empty polynomial")
        return cls(n, terms)


def fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def monomial_str(e: MultiIndex, letter: str = "x") -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"{letter}{i}")
        elif k > 1:
            parts.append(f"{letter}{i}^{k}")
    return "*".join(parts)


def format_terms(terms) -> str:
    """Join ``(coeff, monomial_text)`` pairs into ``c*m + ...`` text."""
    if not terms:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def is_homogeneous(f: Polynomial):
    """Common total degree of all terms, ``None`` if mixed, ``ANY_DEGREE`` for 0."""
    if f.is_zero():
        return ANY_DEGREE
    degs = {sum(e) for e in f._terms}
    return degs.pop() if len(degs) == 1 else None


def divides_exact(f: Polynomial, g: Polynomial) -> Optional[Polynomial]:
    """Return ``q`` with ``g == f*q`` or ``None`` if ``f`` does not divide ``g``.

    Division by a single polynomial: the leading term (graded lex) of the
    running remainder must always be divisible by the leading term of ``f``,
    otherwise no exact quotient exists.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(g)
    lf, cf = f.leading()
    rem = dict(g._terms)
    quot: Dict[MultiIndex, Fraction] = {}
    while rem:
        lr = max(rem, key=grlex_key)
        if not mi_leq(lf, lr):
            return None
        qe = mi_sub(lr, lf)
        qc = rem[lr] / cf
        quot[qe] = qc
        for e, c in f._terms.items():
            t = mi_add(e, qe)
            v = rem.get(t, 0) - c * qc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial._raw(g.n, quot)


# -- polynomials in s with polynomial coefficients ---------------------------

class SPolynomial:
    """Element of ``Q[x1..xn][s]``; ``coeffs[k]`` is the coefficient of ``s**k``."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Polynomial] = ()):
        cs = list(coeffs)
        for c in cs:
            if c.n != n:
                raise DimensionError(f"coefficient in dimension {c.n}, expected {n}")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.n = n
        self.coeffs: Tuple[Polynomial, ...] = tuple(cs)

    @classmethod
    def from_poly(cls, p: Polynomial) -> "SPolynomial":
        return cls(p.n, [p])

    @classmethod
    def from_univariate(cls, n: int, coeffs: Iterable[Scalar]) -> "SPolynomial":
        return cls(n, [Polynomial.constant(n, c) for c in coeffs])

    @classmethod
    def s(cls, n: int) -> "SPolynomial":
        return cls(n, [Polynomial.zero(n), Polynomial.one(n)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def s_degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def coeff(self, k: int) -> Polynomial:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Polynomial.zero(self.n)

    def _check(self, other: "SPolynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} != {other.n}")

    def __add__(self, other: "SPolynomial") -> "SPolynomial":
        self._check(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return SPolynomial(self.n, [self.coeff(k) + other.coeff(k) for k in range(m)])

    def __neg__(self) -> "SPolynomial":
        return SPolynomial(self.n, [-c for c in self.coeffs])

    def __sub__(self, other: "SPolynomial") -> "SPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "SPolynomial":
        if isinstance(other, (int, Fraction)):
            return SPolynomial(self.n, [c.scale(other) for c in self.coeffs])
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionError("ambient dimensions differ")
            return SPolynomial(self.n, [c * other for c in self.coeffs])
        if isinstance(other, SPolynomial):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return SPolynomial(self.n)
            out = [Polynomial.zero(self.n)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return SPolynomial(self.n, out)
        return NotImplemented

    __rmul__ = __mul__

    def times_s(self, power: int = 1) -> "SPolynomial":
        if not self.coeffs:
            return self
        return SPolynomial(self.n, [Polynomial.zero(self.n)] * power + list(self.coeffs))

    def shift(self, c: Scalar = 1) -> "SPolynomial":
        """Substitute ``s -> s + c``."""
        c = _as_fraction(c)
        out = [Polynomial.zero(self.n)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(k + 1):
                out[j] = out[j] + a.scale(comb(k, j) * c ** (k - j))
        return SPolynomial(self.n, out)

    def map(self, fn) -> "SPolynomial":
        return SPolynomial(self.n, [fn(c) for c in self.coeffs])

    def divide_exact(self, f: Polynomial) -> Optional["SPolynomial"]:
        """Divide every coefficient by ``f``; ``None`` unless all divide."""
        out = []
        for c in self.coeffs:
            q = divides_exact(f, c)
            if q is None:
                return None
            out.append(q)
        return SPolynomial(self.n, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SPolynomial):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            sk = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if not sk:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*{sk}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SPolynomial({self.n}, {str(self)!r})"

    def to_json(self):
        return [c.to_json() for c in self.coeffs]
