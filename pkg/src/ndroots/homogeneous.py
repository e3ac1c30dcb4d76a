"""Euler relations and coordinate splittings of homogeneous polynomials.

An Euler relation is a vector ``c`` with ``sum(c) == 1`` and ``<c, e> == 0``
for every exponent ``e`` of ``f``; then ``f^s = sum_i c_i d_i(x_i f^s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .fs import FsElement, sum_divergence
from .polynomial import MultiIndex, Polynomial, is_homogeneous


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _degree(f: Polynomial) -> int:
    d = is_homogeneous(f)
    if f.is_zero() or not isinstance(d, int):
        raise ValueError("f must be a nonzero homogeneous polynomial")
    return d


def verify_relation(f: Polynomial, c: Sequence[Fraction]) -> bool:
    """Check ``f^s == sum_i c_i d_i(x_i f^s)`` in ``R_f[s] f^s``."""
    return sum_divergence(f, c) == FsElement.fs(f)


@dataclass
class EulerRelation:
    """Either a relation ``c`` (verified through the f^s calculus) or a certificate
    ``y`` with ``sum_m y_m e_m = (1, ..., 1)``, which forces ``sum(c) = 0``."""

    c: Optional[Tuple[Fraction, ...]]
    verified: bool
    certificate: Optional[Tuple[Fraction, ...]] = None
    monomials: Tuple[MultiIndex, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.c is not None

    def to_json(self):
        return {
            "feasible": self.feasible,
            "c": [_q(x) for x in self.c] if self.c else None,
            "verified": self.verified,
            "certificate": None if self.certificate is None else {
                "monomials": [list(e) for e in self.monomials],
                "weights": [_q(y) for y in self.certificate],
            },
        }


def is_euler_relation(f: Polynomial, c: Sequence) -> bool:
    c = [Fraction(x) for x in c]
    if sum(c) != 1:
        return False
    return all(sum(ci * ei for ci, ei in zip(c, e)) == 0 for e, _ in f.items())


def euler_relation_find(f: Polynomial) -> EulerRelation:
    _degree(f)
    monos = tuple(e for e, _ in f.sorted_terms())
    E = [[Fraction(x) for x in e] for e in monos]
    ones = [Fraction(1)] * f.n
    c = linalg.solve(E + [ones], [Fraction(0)] * len(E) + [Fraction(1)])
    if c is None:
        # the all-ones functional lies in the row space of E
        y = linalg.solve(linalg.transpose(E), ones)
        if y is None:
            raise AssertionError("infeasible system without a row-space certificate")
        return EulerRelation(None, False, tuple(y), monos)
    c = tuple(c)
    return EulerRelation(c, verify_relation(f, c))


@dataclass
class SplitReport:
    S: Tuple[int, ...]
    k: int
    n: int
    d: int
    balanced: bool
    coefficients: Optional[Tuple[Fraction, Fraction]] = None
    c: Optional[Tuple[Fraction, ...]] = None
    verified: Optional[bool] = None

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.S)

    def to_json(self):
        return {
            "S": list(self.S),
            "k": self.k,
            "balanced": self.balanced,
            "coefficients": None if self.coefficients is None else [_q(x) for x in self.coefficients],
            "c": None if self.c is None else [_q(x) for x in self.c],
            "verified": self.verified,
        }


def split_degrees(f: Polynomial, S: Sequence[int]) -> set:
    idx = [i - 1 for i in S]
    return {sum(e[i] for i in idx) for e, _ in f.items()}


def bidegree_split_check(f: Polynomial, S: Sequence[int]) -> Optional[SplitReport]:
    """If every monomial has the same degree ``k`` in the variables ``S``, report it.

    When ``n k != d |S|`` the relation with weight ``-(d-k)/(nk-dl)`` on ``S``
    and ``k/(nk-dl)`` off ``S`` is built and checked.
    """
    d = _degree(f)
    n = f.n
    S = tuple(sorted(set(S)))
    if not S or len(S) >= n or any(not 1 <= i <= n for i in S):
        raise ValueError("S must be a nonempty proper subset of the variables")
    degs = split_degrees(f, S)
    if len(degs) != 1:
        return None
    k = degs.pop()
    l = len(S)
    gap = n * k - d * l
    if gap == 0:
        return SplitReport(S, k, n, d, balanced=True)
    a, b = Fraction(-(d - k), gap), Fraction(k, gap)
    c = tuple(a if i in S else b for i in range(1, n + 1))
    return SplitReport(S, k, n, d, False, (a, b), c, verify_relation(f, c))


@dataclass
class Separability:
    separable: bool
    rank: int
    factors: Optional[Tuple[Polynomial, Polynomial]] = None

    def to_json(self):
        return {
            "separable": self.separable,
            "rank": self.rank,
            "factors": None if self.factors is None else [str(g) for g in self.factors],
        }


def separability_test(f: Polynomial, S: Sequence[int]) -> Separability:
    """Is ``f = g1(x_S) * g2(x_rest)``?  Decided by the rank of the coefficient matrix."""
    n = f.n
    S = set(S)
    if not S or len(S) >= n:
        raise ValueError("S must be a nonempty proper subset of the variables")
    mask = [i + 1 in S for i in range(n)]

    def part(e, inside):
        return tuple(x if m == inside else 0 for x, m in zip(e, mask))

    rows = sorted({part(e, True) for e, _ in f.items()})
    cols = sorted({part(e, False) for e, _ in f.items()})
    ri = {e: i for i, e in enumerate(rows)}
    ci = {e: i for i, e in enumerate(cols)}
    M = [[Fraction(0)] * len(cols) for _ in rows]
    for e, c in f.items():
        M[ri[part(e, True)]][ci[part(e, False)]] = c
    rk = linalg.rank(M) if M else 0
    if rk != 1:
        return Separability(False, rk)
    # rank one: M = u v^T with u a nonzero column and v the matching row scaled
    i0, j0 = next((i, j) for i, row in enumerate(M) for j, v in enumerate(row) if v)
    pivot = M[i0][j0]
    g1 = Polynomial(n, {rows[i]: M[i][j0] for i in range(len(rows))})
    g2 = Polynomial(n, {cols[j]: M[i0][j] / pivot for j in range(len(cols))})
    if g1 * g2 != f:
        raise AssertionError("rank-one reconstruction failed to multiply back")
    return Separability(True, 1, (g1, g2))


def bipartitions(n: int) -> List[Tuple[int, ...]]:
    """Nonempty proper subsets containing variable 1 (one per unordered split)."""
    rest = list(range(2, n + 1))
    out = []
    for size in range(0, n - 1):
        for extra in combinations(rest, size):
            out.append((1,) + extra)
    return out


SCREEN_NOTE = "fixed-coordinate screen: only coordinate splittings are examined, not all linear decompositions"


@dataclass
class ScreenReport:
    euler: EulerRelation
    witnesses: List[SplitReport]
    balanced: List[SplitReport]
    separable: List[Tuple[Tuple[int, ...], Separability]]

    @property
    def verdict(self) -> str:
        if self.witnesses:
            return "hypothesis fails in these coordinates (bidegree-pure split with nk != dl found)"
        return "no witness in these coordinates"

    def to_json(self):
        return {
            "schema": 1,
            "euler_relation": self.euler.to_json(),
            "splits": [w.to_json() for w in self.witnesses + self.balanced],
            "witnesses": [list(w.S) for w in self.witnesses],
            "separable": [{"S": list(S), **sep.to_json()} for S, sep in self.separable],
            "screen_verdict": self.verdict,
            "note": SCREEN_NOTE,
        }


def homogeneous_root_screen(f: Polynomial) -> ScreenReport:
    """Look for coordinate splittings that make ``f`` bidegree-pure with ``nk != d|S|``.

    Each one forces an Euler relation, so its presence means the homogeneous
    root conjecture says nothing about ``f``.
    """
    _degree(f)
    witnesses, balanced, seps = [], [], []
    for S in bipartitions(f.n):
        rep = bidegree_split_check(f, S)
        if rep is not None:
            (balanced if rep.balanced else witnesses).append(rep)
        seps.append((S, separability_test(f, S)))
    return ScreenReport(euler_relation_find(f), witnesses, balanced, seps)
