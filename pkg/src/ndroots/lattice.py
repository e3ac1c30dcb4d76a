"""Intersection lattice invariants, the Orlik-Solomon nbc basis and Aomoto complexes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .arrangement import (
    DEFAULT_BUDGET,
    Arrangement,
    BudgetExceeded,
    Flat,
    PreconditionError,
    Support,
    closure,
)
from .forms import sort_with_sign


@dataclass
class IntersectionLattice:
    """All flats (bottom included) ordered by support inclusion, with Moebius values."""

    flats: List[Flat]
    mobius: Dict[Support, int]

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    @property
    def top(self) -> Flat:
        return self.flats[-1]

    def below(self, x: Flat) -> List[Flat]:
        s = set(x.support)
        return [y for y in self.flats if set(y.support) <= s and y != x]


def all_flats(A: Arrangement, budget: int = DEFAULT_BUDGET) -> List[Flat]:
    if A.r > budget:
        raise BudgetExceeded(f"{A.r} forms exceed the enumeration budget {budget}")
    seen: Dict[Support, Flat] = {(): Flat((), 0)}
    for size in range(1, A.full_rank() + 1):
        for S in combinations(A.indices, size):
            if A.rank(S) == size:
                fl = closure(A, S)
                seen.setdefault(fl.support, fl)
    return sorted(seen.values(), key=lambda fl: (fl.dim, fl.support))


def mobius(A: Arrangement, budget: int = DEFAULT_BUDGET) -> IntersectionLattice:
    flats = all_flats(A, budget)
    mu: Dict[Support, int] = {}
    for x in flats:
        if not x.support:
            mu[x.support] = 1
            continue
        s = set(x.support)
        mu[x.support] = -sum(mu[y.support] for y in flats
                             if y.dim < x.dim and set(y.support) <= s)
    return IntersectionLattice(flats, mu)


def char_poly(A: Arrangement, budget: int = DEFAULT_BUDGET,
              lattice: Optional[IntersectionLattice] = None) -> List[int]:
    """Coefficients of ``sum_X mu(X) t^(n - dim X)``, constant term first."""
    lat = lattice or mobius(A, budget)
    coeffs = [0] * (A.n + 1)
    for x in lat.flats:
        coeffs[A.n - x.dim] += lat.mobius[x.support]
    return coeffs


def poly_eval(coeffs: Sequence[int], t) -> int:
    return sum(c * t ** k for k, c in enumerate(coeffs))


def divide_by_t_minus_1(coeffs: Sequence[int]) -> List[int]:
    """Synthetic division; raises if ``t = 1`` is not a root."""
    top = len(coeffs) - 1
    q = [0] * top
    carry = 0
    for k in range(top, 0, -1):
        carry = coeffs[k] + carry
        q[k - 1] = carry
    if coeffs[0] + carry != 0:
        raise ValueError("t - 1 does not divide the polynomial")
    return q


def chi_projective(A: Arrangement, budget: int = DEFAULT_BUDGET) -> int:
    """Euler characteristic of the projective complement: ``q(1)`` for ``p = (t-1) q``."""
    if not A.is_essential():
        raise PreconditionError("arrangement is not essential")
    q = divide_by_t_minus_1(char_poly(A, budget))
    return poly_eval(q, 1)


def char_poly_str(coeffs: Sequence[int]) -> str:
    from .parsing import univariate_str

    return univariate_str([Fraction(c) for c in coeffs], "t")


# -- Orlik-Solomon --------------------------------------------------------------------

@dataclass
class OSBasis:
    order: Tuple[int, ...]
    circuits: List[Support]
    broken: List[Support]
    nbc: List[List[Support]]

    @property
    def counts(self) -> List[int]:
        return [len(level) for level in self.nbc]


def circuits(A: Arrangement) -> List[Support]:
    out = []
    for size in range(2, A.full_rank() + 2):
        for S in combinations(A.indices, size):
            if A.rank(S) == size - 1 and all(A.rank(T) == size - 1 for T in combinations(S, size - 1)):
                out.append(S)
    return out


def os_nbc(A: Arrangement, order: Optional[Sequence[int]] = None) -> OSBasis:
    """No-broken-circuit sets for the linear order ``order`` on form indices.

    Index tuples are kept sorted by position in ``order``.
    """
    order = tuple(order) if order is not None else A.indices
    if sorted(order) != list(A.indices):
        raise ValueError("order must be a permutation of the form indices")
    pos = {j: k for k, j in enumerate(order)}
    key = lambda S: tuple(sorted(S, key=pos.get))
    circs = [key(C) for C in circuits(A)]
    broken = sorted({C[1:] for C in circs}, key=lambda S: (len(S), [pos[j] for j in S]))
    broken_sets = [set(b) for b in broken]
    levels: List[List[Support]] = [[()]]
    for size in range(1, A.full_rank() + 1):
        level = []
        for S in combinations(order, size):
            if A.rank(S) != size:
                continue
            s = set(S)
            if any(b <= s for b in broken_sets):
                continue
            level.append(S)
        levels.append(level)
    return OSBasis(order, circs, broken, levels)


class _OSReducer:
    """Rewrites exterior monomials ``e_T`` into the nbc basis.

    Monomials are tuples ordered by position in the chosen order; dependent
    monomials vanish and a broken circuit ``C - min C`` is traded for the other
    terms of ``d e_C = 0``, which strictly lowers the monomial.
    """

    def __init__(self, A: Arrangement, basis: OSBasis):
        self.A = A
        self.basis = basis
        self.pos = {j: k for k, j in enumerate(basis.order)}
        self.circ_by_broken = {}
        for C in basis.circuits:
            self.circ_by_broken.setdefault(C[1:], C)
        self.memo: Dict[Support, Dict[Support, int]] = {}

    def sort(self, T) -> Tuple[int, Optional[Support]]:
        sign, ranks = sort_with_sign([self.pos[j] for j in T])
        if sign == 0:
            return 0, None
        return sign, tuple(self.basis.order[k] for k in ranks)

    def reduce(self, T: Support) -> Dict[Support, int]:
        if T in self.memo:
            return self.memo[T]
        if self.A.rank(T) < len(T):
            self.memo[T] = {}
            return {}
        hit = None
        for b, C in self.circ_by_broken.items():
            if set(b) <= set(T):
                hit = (b, C)
                break
        if hit is None:
            self.memo[T] = {T: 1}
            return self.memo[T]
        b, C = hit
        rest = tuple(j for j in T if j not in b)
        sign0, _ = self.sort(b + rest)
        # e_T = sign0 * e_b ^ e_rest and e_b = -sum_{k>=1} (-1)^k e_{C - c_k}
        out: Dict[Support, int] = {}
        for k in range(1, len(C)):
            piece = C[:k] + C[k + 1:]
            s, U = self.sort(piece + rest)
            if s == 0:
                continue
            w = -sign0 * (-1) ** k * s
            for V, c in self.reduce(U).items():
                out[V] = out.get(V, 0) + w * c
        out = {V: c for V, c in out.items() if c}
        self.memo[T] = out
        return out


@dataclass
class AomotoComplex:
    weights: Tuple[Fraction, ...]
    basis: OSBasis
    matrices: List[linalg.Matrix]

    def betti(self) -> List[int]:
        counts = self.basis.counts
        ranks = [linalg.rank(m) if m and m[0] else 0 for m in self.matrices]
        out = []
        for p, dim in enumerate(counts):
            out_rank = ranks[p] if p < len(ranks) else 0
            in_rank = ranks[p - 1] if p >= 1 else 0
            out.append(dim - out_rank - in_rank)
        return out


def aomoto_complex(A: Arrangement, weights: Sequence, order: Optional[Sequence[int]] = None) -> AomotoComplex:
    """Matrices of ``e_S -> omega ^ e_S`` with ``omega = sum_j lambda_j e_j`` in the nbc basis.

    ``matrices[p]`` maps degree ``p`` to degree ``p+1``; column ``i`` is the image
    of the ``i``-th nbc set of degree ``p``.
    """
    lam = tuple(Fraction(w) for w in weights)
    if len(lam) != A.r:
        raise ValueError("one weight per form")
    basis = os_nbc(A, order)
    red = _OSReducer(A, basis)
    mats = []
    for p in range(len(basis.nbc) - 1):
        src, dst = basis.nbc[p], basis.nbc[p + 1]
        index = {S: i for i, S in enumerate(dst)}
        m = [[Fraction(0)] * len(src) for _ in dst]
        for col, S in enumerate(src):
            for j, lj in zip(A.indices, lam):
                if not lj or j in S:
                    continue
                s, T = red.sort((j,) + S)
                for V, c in red.reduce(T).items():
                    m[index[V]][col] += lj * s * c
        mats.append(m)
    return AomotoComplex(lam, basis, mats)


def aomoto_betti(A: Arrangement, weights: Sequence, order: Optional[Sequence[int]] = None) -> List[int]:
    return aomoto_complex(A, weights, order).betti()


@dataclass
class LatticeReport:
    char_poly: List[int]
    chi: Optional[int]
    predicted_top_betti: Optional[int]
    nbc_counts: List[int]
    weights: Optional[Tuple[Fraction, ...]]
    betti: Optional[List[int]]

    def to_json(self):
        return {
            "schema": 1,
            "char_poly": self.char_poly,
            "char_poly_text": char_poly_str(self.char_poly),
            "chi_projective": self.chi,
            "predicted_top_betti": self.predicted_top_betti,
            "nbc_counts": self.nbc_counts,
            "aomoto": None if self.weights is None else {
                "lambda": [f"{w.numerator}/{w.denominator}" for w in self.weights],
                "betti": self.betti,
            },
        }


def lattice_report(A: Arrangement, weights: Optional[Sequence] = None,
                   order: Optional[Sequence[int]] = None, budget: int = DEFAULT_BUDGET,
                   theorem_applies: Optional[bool] = None) -> LatticeReport:
    """Lattice invariants; the top-Betti prediction ``|chi|`` is only given when
    the arrangement theorem applies (``theorem_applies``, computed if omitted)."""
    from .arrangement import analyze

    cp = char_poly(A, budget)
    chi = chi_projective(A, budget) if A.is_essential() else None
    if theorem_applies is None:
        theorem_applies = analyze(A, budget).applies
    predicted = abs(chi) if (chi is not None and theorem_applies) else None
    basis = os_nbc(A, order)
    betti = None
    lam = None
    if weights is not None:
        lam = tuple(Fraction(w) for w in weights)
        betti = aomoto_betti(A, lam, order)
    return LatticeReport(cp, chi, predicted, basis.counts, lam, betti)
