"""Differential forms with polynomial coefficients on affine n-space."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .polynomial import DimensionError, Polynomial

Index = Tuple[int, ...]


def sort_with_sign(idx: Iterable[int]) -> Tuple[int, Optional[Index]]:
    """Sort an index sequence; return ``(sign, sorted)`` or ``(0, None)`` on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class DifferentialForm:
    """A p-form ``sum_I g_I dx_I`` with ``I`` strictly increasing (1-based)."""

    __slots__ = ("n", "p", "_comps")

    def __init__(self, n: int, p: int, components: Optional[Mapping[Index, Polynomial]] = None):
        if not 0 <= p <= n:
            raise ValueError(f"form degree {p} outside 0..{n}")
        self.n = n
        self.p = p
        comps: Dict[Index, Polynomial] = {}
        for key, g in (components or {}).items():
            if g.n != n:
                raise DimensionError(f"coefficient in dimension {g.n}, expected {n}")
            if len(key) != p or any(not 1 <= i <= n for i in key):
                raise ValueError(f"bad index tuple {key} for a {p}-form on {n}-space")
            sign, skey = sort_with_sign(key)
            if sign == 0:
                continue
            acc = comps.get(skey, Polynomial.zero(n)) + (g if sign > 0 else -g)
            if acc.is_zero():
                comps.pop(skey, None)
            else:
                comps[skey] = acc
        self._comps = comps

    @classmethod
    def zero(cls, n: int, p: int) -> "DifferentialForm":
        return cls(n, p)

    @classmethod
    def function(cls, g: Polynomial) -> "DifferentialForm":
        return cls(g.n, 0, {(): g})

    @classmethod
    def basis(cls, n: int, idx: Iterable[int], coeff: Optional[Polynomial] = None) -> "DifferentialForm":
        idx = tuple(idx)
        g = coeff if coeff is not None else Polynomial.one(n)
        return cls(n, len(idx), {idx: g})

    @classmethod
    def volume(cls, n: int) -> "DifferentialForm":
        """``dx = dx1 ^ ... ^ dxn``."""
        return cls.basis(n, range(1, n + 1))

    @property
    def components(self) -> Dict[Index, Polynomial]:
        return dict(self._comps)

    def coeff(self, idx: Iterable[int]) -> Polynomial:
        sign, key = sort_with_sign(idx)
        if sign == 0:
            return Polynomial.zero(self.n)
        g = self._comps.get(key, Polynomial.zero(self.n))
        return g if sign > 0 else -g

    def is_zero(self) -> bool:
        return not self._comps

    def _check(self, other: "DifferentialForm") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} != {other.n}")
        if self.p != other.p:
            raise ValueError(f"cannot add a {self.p}-form and a {other.p}-form")

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        self._check(other)
        comps = dict(self._comps)
        for k, g in other._comps.items():
            comps[k] = comps.get(k, Polynomial.zero(self.n)) + g
        return DifferentialForm(self.n, self.p, comps)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.n, self.p, {k: -g for k, g in self._comps.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def __mul__(self, c) -> "DifferentialForm":
        """Multiply by a scalar or a polynomial function."""
        if isinstance(c, (int, Fraction)):
            return DifferentialForm(self.n, self.p, {k: g.scale(c) for k, g in self._comps.items()})
        if isinstance(c, Polynomial):
            return DifferentialForm(self.n, self.p, {k: g * c for k, g in self._comps.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.n, self.p, self._comps) == (other.n, other.p, other._comps)

    def __hash__(self) -> int:
        return hash((self.n, self.p, frozenset(self._comps.items())))

    def __str__(self) -> str:
        if not self._comps:
            return "0"
        parts = []
        for key in sorted(self._comps):
            g = self._comps[key]
            dx = "^".join(f"dx{i}" for i in key)
            parts.append(f"({g})*{dx}" if dx else f"({g})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DifferentialForm(n={self.n}, p={self.p}, {str(self)!r})"


def wedge(omega: DifferentialForm, eta: DifferentialForm) -> DifferentialForm:
    if omega.n != eta.n:
        raise DimensionError("ambient dimensions differ")
    n, p = omega.n, omega.p + eta.p
    if p > n:
        return DifferentialForm.zero(n, n)
    comps: Dict[Index, Polynomial] = {}
    for i1, g1 in omega._comps.items():
        for i2, g2 in eta._comps.items():
            sign, key = sort_with_sign(i1 + i2)
            if sign == 0:
                continue
            prod = g1 * g2
            comps[key] = comps.get(key, Polynomial.zero(n)) + (prod if sign > 0 else -prod)
    return DifferentialForm(n, p, comps)


def exterior_d(omega: DifferentialForm) -> DifferentialForm:
    n = omega.n
    if omega.p == n:
        return DifferentialForm.zero(n, n)
    out = DifferentialForm.zero(n, omega.p + 1)
    for key, g in omega._comps.items():
        for i in range(1, n + 1):
            if i in key:
                continue
            gi = g.diff(i)
            if gi:
                out = out + DifferentialForm.basis(n, (i,) + key, gi)
    return out


def differential(f: Polynomial) -> DifferentialForm:
    """``df`` as a 1-form."""
    return exterior_d(DifferentialForm.function(f))


def euler_contraction(omega: DifferentialForm, d: int) -> DifferentialForm:
    """Contract with the Euler field divided by ``d``.

    ``dx_{i0} ^ ... ^ dx_{ip}`` goes to ``sum_j (-1)^j (x_{ij}/d) dx_{i0} ^ ..(omit ij).. ^ dx_{ip}``.
    """
    if d <= 0:
        raise ValueError("degree must be positive")
    n = omega.n
    if omega.p == 0:
        return DifferentialForm.zero(n, 0)
    inv = Fraction(1, d)
    comps: Dict[Index, Polynomial] = {}
    for key, g in omega._comps.items():
        for j, i in enumerate(key):
            rest = key[:j] + key[j + 1:]
            term = g * Polynomial.var(n, i).scale(inv if j % 2 == 0 else -inv)
            comps[rest] = comps.get(rest, Polynomial.zero(n)) + term
    return DifferentialForm(n, omega.p - 1, comps)


def omega0(n: int, d: int) -> DifferentialForm:
    """``(1/d) sum_i (-1)^(i-1) x_i dx_1 ^ .. (omit i) .. ^ dx_n``."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return euler_contraction(DifferentialForm.volume(n), d)


def homotopy_lhs(f: Polynomial, omega: DifferentialForm, d: int) -> DifferentialForm:
    """``h(df ^ w) + df ^ h(w)``; equals ``f w`` when ``f`` is homogeneous of degree ``d``."""
    n, p = omega.n, omega.p
    df = differential(f)
    out = DifferentialForm.zero(n, p)
    if p < n:
        out = out + euler_contraction(wedge(df, omega), d)
    if p > 0:
        out = out + wedge(df, euler_contraction(omega, d))
    return out


def basis_indices(n: int, p: int):
    return list(combinations(range(1, n + 1), p))
