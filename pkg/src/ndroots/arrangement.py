"""Central hyperplane arrangements with multiplicities.

Indices of forms are 1-based throughout the public API, matching how the
arrangement ``{L_1, ..., L_r}`` is written.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import floor, lcm
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .polynomial import Polynomial

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20

Support = Tuple[int, ...]


class PreconditionError(ValueError):
    """Input violates an operation's precondition (e.g. decomposable arrangement)."""


class BudgetExceeded(PreconditionError):
    pass


class InvariantViolation(AssertionError):
    """A postcondition failed; this indicates a bug, not bad input."""


class Arrangement:
    """Linear forms ``L_j`` (coefficient vectors) with multiplicities ``a_j``."""

    def __init__(self, forms: Iterable[Sequence], mults: Optional[Iterable[int]] = None,
                 n: Optional[int] = None):
        fs = [tuple(Fraction(c) for c in row) for row in forms]
        if n is None:
            if not fs:
                raise ValueError("cannot infer dimension of an empty arrangement")
            n = len(fs[0])
        if any(len(row) != n for row in fs):
            raise ValueError(f"every form needs {n} coefficients")
        if any(not any(row) for row in fs):
            raise ValueError("zero linear form")
        ms = [1] * len(fs) if mults is None else [int(a) for a in mults]
        if len(ms) != len(fs):
            raise ValueError("one multiplicity per form")
        if any(a < 1 for a in ms):
            raise ValueError("multiplicities must be positive")
        self.n = n
        self.forms: Tuple[Tuple[Fraction, ...], ...] = tuple(fs)
        self.mults: Tuple[int, ...] = tuple(ms)
        self._rank_cache: Dict[FrozenSet[int], int] = {}
        for i, j in combinations(range(1, len(fs) + 1), 2):
            if self.rank((i, j)) < 2:
                raise ValueError(f"forms {i} and {j} are proportional")

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        return cls(data["forms"], data.get("mults"), data.get("n"))

    def to_json(self):
        return {
            "n": self.n,
            "forms": [[f"{c.numerator}/{c.denominator}" for c in row] for row in self.forms],
            "mults": list(self.mults),
        }

    @property
    def r(self) -> int:
        return len(self.forms)

    @property
    def d(self) -> int:
        return sum(self.mults)

    @property
    def indices(self) -> Support:
        return tuple(range(1, self.r + 1))

    def polynomial(self) -> Polynomial:
        out = Polynomial.one(self.n)
        for row, a in zip(self.forms, self.mults):
            out = out * Polynomial.linear_form(row) ** a
        return out

    def rank(self, S: Iterable[int]) -> int:
        key = frozenset(S)
        if key not in self._rank_cache:
            rows = [self.forms[j - 1] for j in sorted(key)]
            self._rank_cache[key] = linalg.rank(rows) if rows else 0
        return self._rank_cache[key]

    def full_rank(self) -> int:
        return self.rank(self.indices)

    def is_essential(self) -> bool:
        return self.full_rank() == self.n

    # transformations used by invariance checks
    def permuted(self, perm: Sequence[int]) -> "Arrangement":
        """Forms reordered so new form ``k`` is old form ``perm[k]`` (1-based)."""
        return Arrangement([self.forms[p - 1] for p in perm], [self.mults[p - 1] for p in perm], self.n)

    def rescaled(self, scales: Sequence) -> "Arrangement":
        return Arrangement(
            [[c * Fraction(t) for c in row] for row, t in zip(self.forms, scales)], self.mults, self.n
        )

    def transformed(self, matrix: Sequence[Sequence]) -> "Arrangement":
        """Apply an invertible change of coordinates: each form becomes ``row . M``."""
        m = linalg.to_matrix(matrix)
        if linalg.rank(m) != self.n:
            raise ValueError("coordinate change must be invertible")
        return Arrangement([linalg.mat_vec(linalg.transpose(m), row) for row in self.forms], self.mults, self.n)


@dataclass(frozen=True)
class Flat:
    support: Support
    dim: int

    def to_json(self):
        return {"support": list(self.support), "dim": self.dim}


def closure(A: Arrangement, S: Iterable[int]) -> Flat:
    S = tuple(sorted(set(S)))
    rk = A.rank(S)
    support = tuple(j for j in A.indices if j in S or A.rank(S + (j,)) == rk)
    return Flat(support, rk)


def is_proper(A: Arrangement, flat: Flat) -> bool:
    return 1 <= flat.dim <= A.n - 1


def enumerate_flats(A: Arrangement, budget: int = DEFAULT_BUDGET) -> List[Flat]:
    """All proper nonzero flats, sorted by ``(dim, support)``."""
    if A.r > budget:
        raise BudgetExceeded(f"{A.r} forms exceed the enumeration budget {budget}")
    seen: Dict[Support, Flat] = {}
    for size in range(1, A.n):
        for S in combinations(A.indices, size):
            if A.rank(S) != size:
                continue
            fl = closure(A, S)
            seen.setdefault(fl.support, fl)
    return sorted(seen.values(), key=lambda fl: (fl.dim, fl.support))


# -- matroid connectivity -----------------------------------------------------

def _basis_of(A: Arrangement, S: Sequence[int]) -> List[int]:
    basis: List[int] = []
    for j in S:
        if A.rank(basis + [j]) > len(basis):
            basis.append(j)
    return basis


def coordinates(A: Arrangement, basis: Sequence[int], j: int) -> List[Fraction]:
    """Coefficients expressing ``L_j`` in the forms ``L_b, b in basis``."""
    cols = linalg.transpose([A.forms[b - 1] for b in basis])
    sol = linalg.solve(cols, A.forms[j - 1])
    if sol is None:
        raise ValueError(f"L_{j} not in the span of the given basis")
    return sol


def blocks(A: Arrangement, S: Iterable[int]) -> List[Support]:
    """Connected components of the linear matroid on ``{L_j : j in S}``.

    Blocks start as singletons.  For a greedy basis ``B`` of ``S``, each
    ``j`` outside ``B`` together with the basis elements in its expansion
    forms a circuit, and all blocks touched by that circuit are merged.
    """
    S = sorted(set(S))
    parent = {j: j for j in S}

    def find(j):
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    basis = _basis_of(A, S)
    for j in S:
        if j in basis:
            continue
        coords = coordinates(A, basis, j)
        for b, c in zip(basis, coords):
            if c:
                parent[find(b)] = find(j)
    groups: Dict[int, List[int]] = {}
    for j in S:
        groups.setdefault(find(j), []).append(j)
    return sorted(tuple(g) for g in groups.values())


def is_indecomposable(A: Arrangement, S: Optional[Iterable[int]] = None) -> bool:
    """Connectedness of the matroid on ``S`` (default: all forms).

    For the whole arrangement this also requires the forms to span the
    ambient space; otherwise the span and a complement split it.
    """
    whole = S is None
    S = tuple(A.indices if S is None else sorted(set(S)))
    if not S:
        raise ValueError("index set must be nonempty")
    connected = len(blocks(A, S)) == 1
    if whole:
        return connected and A.is_essential()
    return connected


def is_indecomposable_bruteforce(A: Arrangement, S: Iterable[int]) -> bool:
    """Reference check: no bipartition ``S = S1 + S2`` has additive rank."""
    S = tuple(sorted(set(S)))
    if len(S) == 1:
        return True
    total = A.rank(S)
    first, rest = S[0], S[1:]
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            S1 = (first,) + extra
            S2 = tuple(j for j in rest if j not in extra)
            if A.rank(S1) + A.rank(S2) == total:
                return False
    return True


# -- dense edges and condition (R) --------------------------------------------

@dataclass(frozen=True)
class DenseEdge:
    flat: Flat
    sum_mult: int
    r_value: Fraction

    @property
    def support(self) -> Support:
        return self.flat.support

    @property
    def dim(self) -> int:
        return self.flat.dim

    def to_json(self):
        return {
            "support": list(self.support),
            "dim": self.dim,
            "sum_mult": self.sum_mult,
            "r_value": _q(self.r_value),
        }


def dense_edges(A: Arrangement, budget: int = DEFAULT_BUDGET) -> List[DenseEdge]:
    ratio = Fraction(A.n, A.d)
    out = []
    for fl in enumerate_flats(A, budget):
        if len(fl.support) > 1 and not is_indecomposable(A, fl.support):
            continue
        m = sum(A.mults[j - 1] for j in fl.support)
        out.append(DenseEdge(fl, m, fl.dim - ratio * m))
    return out


def is_positive_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q > 0


@dataclass
class ConditionR:
    passed: bool
    violators: List[DenseEdge]

    def to_json(self):
        return {"pass": self.passed, "violators": [e.to_json() for e in self.violators]}


def condition_R(A: Arrangement, edges: Optional[List[DenseEdge]] = None,
                budget: int = DEFAULT_BUDGET) -> ConditionR:
    """No dense edge has ``dim W - (n/d) sum_{j in W} a_j`` a positive integer."""
    edges = dense_edges(A, budget) if edges is None else edges
    bad = [e for e in edges if is_positive_integer(e.r_value)]
    return ConditionR(not bad, bad)


# -- epsilon weights -----------------------------------------------------------

@dataclass
class EpsilonWeights:
    eps: Tuple[Fraction, ...]
    perturbed: bool = False
    basis: Tuple[int, ...] = ()

    def weight(self, support: Iterable[int]) -> Fraction:
        return sum((self.eps[j - 1] for j in support), Fraction(0))

    def to_json(self):
        return [_q(e) for e in self.eps]


def verify_epsilon(A: Arrangement, eps: Sequence[Fraction], budget: int = DEFAULT_BUDGET,
                   edges: Optional[List[DenseEdge]] = None, nonintegral: bool = False) -> List[str]:
    """List every violated requirement (empty list means valid).

    A proper subspace ``W`` only sees the forms it contains, and those span a
    flat of dimension at most ``dim W``, so checking flats covers all ``W``.
    """
    problems = []
    if any(e <= 0 for e in eps):
        problems.append("non-positive weight")
    if sum(eps) != A.n:
        problems.append(f"weights sum to {sum(eps)}, expected {A.n}")
    for fl in enumerate_flats(A, budget):
        w = sum(eps[j - 1] for j in fl.support)
        if not w < fl.dim:
            problems.append(f"flat {fl.support}: weight {w} >= dim {fl.dim}")
    if nonintegral:
        for e in edges if edges is not None else dense_edges(A, budget):
            w = sum(eps[j - 1] for j in e.support)
            if w.denominator == 1:
                problems.append(f"dense edge {e.support}: integral weight {w}")
    return problems


def epsilon_construct(A: Arrangement, budget: int = DEFAULT_BUDGET) -> EpsilonWeights:
    """Positive weights summing to ``n`` with ``sum_{L_j in W} eps_j < dim W``.

    Take the first independent ``n`` forms as basis ``B``.  Each other form
    ``L_j`` has basis-support ``B_j``; ``b_i`` counts the ``B_j`` containing
    ``L_i``.  Basis forms get ``n/(n+1)``; the others get
    ``(sum_{i in B_j} 1/b_i) / (n+1)``.
    """
    n = A.n
    if not is_indecomposable(A):
        raise PreconditionError("arrangement is decomposable")
    if n == 1:
        eps = (Fraction(1),)
        return EpsilonWeights(eps, basis=(1,))
    if A.r <= n:
        raise PreconditionError("need more forms than the dimension")
    basis = _basis_of(A, A.indices)
    supports: Dict[int, List[int]] = {}
    counts = {i: 0 for i in basis}
    for j in A.indices:
        if j in basis:
            continue
        coords = coordinates(A, basis, j)
        supports[j] = [b for b, c in zip(basis, coords) if c]
        for b in supports[j]:
            counts[b] += 1
    eps = []
    for j in A.indices:
        if j in counts:
            eps.append(Fraction(n, n + 1))
        else:
            eps.append(sum((Fraction(1, counts[i]) for i in supports[j]), Fraction(0)) / (n + 1))
    problems = verify_epsilon(A, eps, budget)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return EpsilonWeights(tuple(eps), basis=tuple(basis))


def _primes(k: int) -> List[int]:
    out: List[int] = []
    c = 2
    while len(out) < k:
        if all(c % p for p in out):
            out.append(c)
        c += 1
    return out


def epsilon_perturb(A: Arrangement, eps: EpsilonWeights, budget: int = DEFAULT_BUDGET,
                    max_tries: int = 40) -> EpsilonWeights:
    """Nudge the weights so no dense edge has integral total weight.

    ``eps + w/Q`` with ``w_j = p_j - mean(p)`` (``p_j`` the j-th prime) and
    ``Q = (largest denominator) * 3 * 2^t`` for ``t = 1, 2, ...``; the first
    candidate passing every check is returned.
    """
    edges = dense_edges(A, budget)
    if not verify_epsilon(A, eps.eps, budget, edges, nonintegral=True):
        return EpsilonWeights(eps.eps, True, eps.basis)
    r = A.r
    ps = _primes(r)
    mean = Fraction(sum(ps), r)
    w = [p - mean for p in ps]
    base = max(e.denominator for e in eps.eps)
    for t in range(1, max_tries + 1):
        Q = base * 3 * 2 ** t
        cand = tuple(e + wj / Q for e, wj in zip(eps.eps, w))
        if not verify_epsilon(A, cand, budget, edges, nonintegral=True):
            log.debug("perturbation accepted at t=%d", t)
            return EpsilonWeights(cand, True, eps.basis)
    raise InvariantViolation("perturbation retries exhausted")


# -- mu and residues -------------------------------------------------------------

@dataclass
class MuAssignment:
    mu: Dict[Support, int]
    N: int
    residues: Dict[Support, Fraction]
    weights: Dict[Support, Fraction] = field(default_factory=dict)

    def to_json(self):
        return {
            "mu": [{"support": list(s), "mu": m} for s, m in self.mu.items()],
            "N": self.N,
            "residues": [{"support": list(s), "residue": _q(v)} for s, v in self.residues.items()],
        }


def mu_and_residues(A: Arrangement, eps: EpsilonWeights, budget: int = DEFAULT_BUDGET,
                    edges: Optional[List[DenseEdge]] = None,
                    condition: Optional[ConditionR] = None) -> MuAssignment:
    """``mu(W) = 1 + floor(sum_W eps)`` and residue ``mu(W) - (n/d) sum_W a_j``."""
    edges = dense_edges(A, budget) if edges is None else edges
    condition = condition_R(A, edges) if condition is None else condition
    ratio = Fraction(A.n, A.d)
    N = reduce(lcm, (e.denominator for e in eps.eps), 1)
    mu, res, wts = {}, {}, {}
    problems = []
    for e in edges:
        w = eps.weight(e.support)
        if w.denominator == 1:
            problems.append(f"{e.support}: weight {w} is integral (weights not perturbed)")
            continue
        m = 1 + floor(w)
        frac = 1 + w - m
        if not 1 <= m <= e.dim:
            problems.append(f"{e.support}: mu={m} outside 1..{e.dim}")
        scaled = N * frac
        if not (scaled.denominator == 1 and 0 < scaled < N):
            problems.append(f"{e.support}: N(1+sum-mu)={scaled} not in (0, N)")
        rv = m - ratio * e.sum_mult
        if condition.passed and is_positive_integer(rv):
            problems.append(f"{e.support}: residue {rv} is a positive integer")
        mu[e.support], res[e.support], wts[e.support] = m, rv, w
    if any(((N * x).denominator != 1) for x in eps.eps):
        problems.append("N * eps not integral")
    if problems:
        raise InvariantViolation("; ".join(problems))
    return MuAssignment(mu, N, res, wts)


# -- full pipeline -----------------------------------------------------------------

@dataclass
class AnalysisReport:
    arrangement: Arrangement
    indecomposable: bool
    dense_edges: List[DenseEdge]
    condition: ConditionR
    epsilon: Optional[EpsilonWeights]
    epsilon_perturbed: Optional[EpsilonWeights]
    mu: Optional[MuAssignment]
    applies: bool

    @property
    def n_over_d(self) -> Fraction:
        return Fraction(self.arrangement.n, self.arrangement.d)

    @property
    def root(self) -> Optional[Fraction]:
        return -self.n_over_d if self.applies else None

    @property
    def verdict(self) -> str:
        if self.applies:
            return f"theorem applies: {_q(-self.n_over_d)} is a root of the local b-function"
        if not self.indecomposable:
            return "theorem silent: arrangement is decomposable"
        return "theorem silent: nonresonance condition (R) fails"

    def to_json(self):
        return {
            "schema": 1,
            "n": self.arrangement.n,
            "d": self.arrangement.d,
            "n_over_d": _q(self.n_over_d),
            "indecomposable": self.indecomposable,
            "dense_edges": [e.to_json() for e in self.dense_edges],
            "condition_R": self.condition.to_json(),
            "epsilon": self.epsilon.to_json() if self.epsilon else None,
            "epsilon_perturbed": self.epsilon_perturbed.to_json() if self.epsilon_perturbed else None,
            "mu": self.mu.to_json()["mu"] if self.mu else None,
            "N": self.mu.N if self.mu else None,
            "residues": self.mu.to_json()["residues"] if self.mu else None,
            "root": _q(self.root) if self.root is not None else None,
            "verdict": self.verdict,
        }


def analyze(A: Arrangement, budget: int = DEFAULT_BUDGET) -> AnalysisReport:
    edges = dense_edges(A, budget)
    cond = condition_R(A, edges)
    indec = is_indecomposable(A)
    eps = pert = mu = None
    if indec and (A.r > A.n or A.n == 1):
        eps = epsilon_construct(A, budget)
        pert = epsilon_perturb(A, eps, budget)
        mu = mu_and_residues(A, pert, budget, edges, cond)
    return AnalysisReport(A, indec, edges, cond, eps, pert, mu, indec and cond.passed)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
