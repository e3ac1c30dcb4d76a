"""The module ``R_f[s] f^s`` and the action of ``D[s]`` on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence

from .polynomial import (
    DimensionError,
    MultiIndex,
    Polynomial,
    Scalar,
    SPolynomial,
    is_homogeneous,
)
from .weyl import WeylOperator, divergence_operator


class FsElement:
    """``(numerator / f^m) * f^s`` with ``m`` as small as possible.

    The numerator is a polynomial in ``x`` and ``s``.  Normalization divides
    ``f`` out of every ``s``-coefficient for as long as that is exact, so two
    elements are equal iff their ``(numerator, m)`` agree.
    """

    __slots__ = ("f", "num", "m")

    def __init__(self, f: Polynomial, num: SPolynomial, m: int = 0):
        if f.is_zero():
            raise ValueError("reference polynomial f must be nonzero")
        if num.n != f.n:
            raise DimensionError("numerator and f live in different dimensions")
        if m < 0:
            raise ValueError("f-power must be non-negative")
        while m > 0 and not num.is_zero():
            q = num.divide_exact(f)
            if q is None:
                break
            num, m = q, m - 1
        if num.is_zero():
            m = 0
        self.f = f
        self.num = num
        self.m = m

    @classmethod
    def fs(cls, f: Polynomial) -> "FsElement":
        """The generator ``f^s`` itself."""
        return cls(f, SPolynomial.from_poly(Polynomial.one(f.n)))

    @classmethod
    def from_poly(cls, f: Polynomial, g: Polynomial, m: int = 0) -> "FsElement":
        return cls(f, SPolynomial.from_poly(g), m)

    @classmethod
    def zero(cls, f: Polynomial) -> "FsElement":
        return cls(f, SPolynomial(f.n))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _check(self, other: "FsElement") -> None:
        if self.f != other.f:
            raise ValueError("elements refer to different f")

    def _lift(self, m: int) -> SPolynomial:
        return self.num * (self.f ** (m - self.m)) if m > self.m else self.num

    def __add__(self, other: "FsElement") -> "FsElement":
        self._check(other)
        m = max(self.m, other.m)
        return FsElement(self.f, self._lift(m) + other._lift(m), m)

    def __neg__(self) -> "FsElement":
        return FsElement(self.f, -self.num, self.m)

    def __sub__(self, other: "FsElement") -> "FsElement":
        return self + (-other)

    def __mul__(self, c) -> "FsElement":
        """Multiply by a scalar, a polynomial in x, or a polynomial in s."""
        if isinstance(c, (int, Fraction, Polynomial, SPolynomial)):
            return FsElement(self.f, self.num * c, self.m)
        return NotImplemented

    __rmul__ = __mul__

    def times_s(self, power: int = 1) -> "FsElement":
        return FsElement(self.f, self.num.times_s(power), self.m)

    def partial(self, i: int) -> "FsElement":
        """``d_i`` applied: ``[f d_i N + (s - m) N d_i f] / f^(m+1)``."""
        fi = self.f.diff(i)
        term1 = self.num.map(lambda c: c.diff(i)) * self.f
        term2 = (self.num.times_s() - self.num * self.m) * fi
        return FsElement(self.f, term1 + term2, self.m + 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FsElement):
            return NotImplemented
        return (self.f, self.num, self.m) == (other.f, other.num, other.m)

    def __hash__(self) -> int:
        return hash((self.f, self.num, self.m))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        den = "" if self.m == 0 else (" / f" if self.m == 1 else f" / f^{self.m}")
        return f"[{self.num}]{den} * f^s"

    def __repr__(self) -> str:
        return f"FsElement({str(self)!r}, f={self.f})"

    def to_json(self):
        return {"numerator": self.num.to_json(), "f_power": self.m}


def apply_to_fs(P: WeylOperator, e: FsElement) -> FsElement:
    """Act with ``P`` on ``e`` term by term: derivatives first, then ``x^beta s^k``."""
    if P.n != e.f.n:
        raise DimensionError("operator and f live in different dimensions")
    cache: Dict[MultiIndex, FsElement] = {(0,) * P.n: e}

    def derived(alpha: MultiIndex) -> FsElement:
        if alpha in cache:
            return cache[alpha]
        i = next(j for j, a in enumerate(alpha) if a)
        prev = list(alpha)
        prev[i] -= 1
        out = derived(tuple(prev)).partial(i + 1)
        cache[alpha] = out
        return out

    total = FsElement.zero(e.f)
    for (beta, alpha, k), c in P.items():
        t = derived(alpha)
        if t.is_zero():
            continue
        num = t.num.map(lambda g: g.mul_monomial(beta, c)).times_s(k)
        total = total + FsElement(e.f, num, t.m)
    return total


def t_shift(e: FsElement) -> FsElement:
    """``t . N(s) f^s = N(s+1) f^(s+1)``."""
    num = e.num.shift(1)
    if e.m > 0:
        return FsElement(e.f, num, e.m - 1)
    return FsElement(e.f, num * e.f, 0)


def is_annihilator(P: WeylOperator, f: Polynomial) -> bool:
    return apply_to_fs(P, FsElement.fs(f)).is_zero()


@dataclass(frozen=True)
class BSPair:
    """Candidate functional equation ``P(s) f^(s+1) = b(s) f^s``.

    ``bpoly`` lists the coefficients of ``b`` from the constant term up.
    """

    operator: WeylOperator
    bpoly: tuple

    def b_as_spoly(self, n: int) -> SPolynomial:
        return SPolynomial.from_univariate(n, self.bpoly)


@dataclass
class PairCheck:
    holds: bool
    residual: FsElement

    def to_json(self):
        return {"pass": self.holds, "residual": self.residual.to_json(), "residual_text": str(self.residual)}


def bs_pair_check(pair: BSPair, f: Polynomial) -> PairCheck:
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    if pair.operator.n != f.n:
        raise DimensionError("operator and f live in different dimensions")
    lhs = apply_to_fs(pair.operator, t_shift(FsElement.fs(f)))
    rhs = FsElement.fs(f) * pair.b_as_spoly(f.n)
    residual = lhs - rhs
    return PairCheck(residual.is_zero(), residual)


def sum_divergence(f: Polynomial, c: Sequence[Scalar]) -> FsElement:
    """``sum_i c_i d_i (x_i f^s)``."""
    return apply_to_fs(divergence_operator(f.n, c), FsElement.fs(f))


@dataclass
class EulerWitness:
    """Outcome of checking ``s f^s = -(n/d) f^s + (1/d) sum_i d_i(x_i f^s)``."""

    verified: bool
    n: int
    d: int
    n_over_d: Fraction
    lhs: FsElement
    rhs: FsElement

    @property
    def candidate_root(self) -> Fraction:
        return -self.n_over_d

    def to_json(self):
        r = self.n_over_d
        c = self.candidate_root
        return {
            "verified": self.verified,
            "n": self.n,
            "d": self.d,
            "n_over_d": f"{r.numerator}/{r.denominator}",
            "candidate_root": f"{c.numerator}/{c.denominator}",
        }


def euler_root_witness(f: Polynomial) -> EulerWitness:
    d = is_homogeneous(f)
    if not isinstance(d, int) or d <= 0:
        raise ValueError("f must be a nonzero homogeneous polynomial of positive degree")
    n = f.n
    ratio = Fraction(n, d)
    fs = FsElement.fs(f)
    lhs = fs.times_s()
    rhs = fs * (-ratio) + sum_divergence(f, [Fraction(1, d)] * n)
    return EulerWitness(lhs == rhs, n, d, ratio, lhs, rhs)
