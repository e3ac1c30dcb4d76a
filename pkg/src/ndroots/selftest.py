"""Oracle comparisons run by ``ndroots selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, List

from . import oracles
from .arrangement import Arrangement, is_indecomposable, is_indecomposable_bruteforce
from .forms import DifferentialForm, differential, exterior_d, homotopy_lhs, omega0, wedge
from .fs import euler_root_witness
from .lattice import aomoto_betti, char_poly, os_nbc
from .polynomial import Polynomial
from .weyl import WeylOperator, in_ideal_Dx, normalize, to_antinormal


@dataclass
class Outcome:
    name: str
    passed: bool
    cases: int
    detail: str = ""


def random_homogeneous(rng: random.Random, n: int, d: int, nterms: int = 4) -> Polynomial:
    terms = {}
    while not terms:
        for _ in range(nterms):
            cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
            e = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
            terms[e] = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3))
    return Polynomial(n, terms)


def random_polynomial(rng: random.Random, n: int, maxdeg: int = 2, nterms: int = 3) -> Polynomial:
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(n))
        terms[e] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Polynomial(n, terms)


def random_form(rng: random.Random, n: int, p: int) -> DifferentialForm:
    comps = {}
    for idx in combinations(range(1, n + 1), p):
        if rng.random() < 0.6:
            comps[idx] = random_polynomial(rng, n)
    return DifferentialForm(n, p, comps)


def random_arrangement(rng: random.Random, n: int, r: int, top: int = 2) -> Arrangement:
    """``r`` pairwise non-proportional forms with small integer coefficients.

    The coefficient range widens after repeated collisions, since a small box
    may not hold ``r`` distinct directions.
    """
    tries = 0
    while True:
        forms = []
        while len(forms) < r:
            v = tuple(rng.randint(-top, top) for _ in range(n))
            if any(v):
                forms.append(v)
        try:
            return Arrangement(forms, [rng.randint(1, 3) for _ in forms])
        except ValueError:
            tries += 1
            if tries % 50 == 0:
                top += 1


def check_antinormal(max_n: int = 3, top: int = 3) -> Outcome:
    cases = 0
    for n in range(1, max_n + 1):
        for beta, alpha in oracles.all_index_pairs(n, top):
            cases += 1
            if to_antinormal(beta, alpha) != oracles.antinormal_bruteforce(beta, alpha):
                return Outcome("anti-normal ordering formula vs rewriting", False, cases,
                               f"mismatch at beta={beta}, alpha={alpha}")
    return Outcome("anti-normal ordering formula vs rewriting", True, cases)


def check_normalize(rng: random.Random, count: int = 100) -> Outcome:
    for case in range(count):
        n = rng.randint(1, 3)
        word = [(rng.choice("xd"), rng.randint(1, n)) for _ in range(rng.randint(0, 7))]
        got = normalize(word, n)
        want = oracles.normal_bruteforce(tuple(word), n)
        if got != WeylOperator(n, {(b, a, 0): c for (b, a), c in want.items()}):
            return Outcome("normal ordering vs rewriting", False, case + 1, f"word {word}")
    return Outcome("normal ordering vs rewriting", True, count)


def check_ideal(rng: random.Random, count: int = 200) -> Outcome:
    from .weyl import gamma_sums, graded_parts, sigma_invariant

    for case in range(count):
        n = rng.randint(1, 3)
        terms = oracles.random_operator_terms(rng, n, nterms=rng.randint(1, 4), graded=rng.random() < 0.5)
        if rng.random() < 0.3:
            # force membership by correcting the constant block
            terms = _project_into_ideal(terms, n)
        P = WeylOperator(n, terms)
        block = oracles.constant_block(P.terms, n)
        ok = in_ideal_Dx(P).holds == oracles.ideal_by_inspection(P.terms, n)
        zero = graded_parts(P).get(0, WeylOperator.scalar(n, 0))
        ok = ok and sigma_invariant(zero) == block.get(((0,) * n, 0), Fraction(0))
        for part in graded_parts(P).values():
            for (gamma, k), v in gamma_sums(part).items():
                expect = block.get((gamma, k), Fraction(0))
                sign = (-1) ** sum(gamma)
                fact = 1
                for g in gamma:
                    for t in range(2, g + 1):
                        fact *= t
                ok = ok and expect == Fraction(sign, fact) * v
        if not ok:
            return Outcome("ideal membership vs anti-normal inspection", False, case + 1, str(P))
    return Outcome("ideal membership vs anti-normal inspection", True, count)


def _project_into_ideal(terms, n):
    """Add ``x^0 d^gamma`` corrections so every gamma-sum vanishes."""
    from math import factorial

    out = dict(terms)
    sums = {}
    for (beta, alpha, k), c in terms.items():
        if all(b <= a for b, a in zip(beta, alpha)):
            gamma = tuple(a - b for a, b in zip(alpha, beta))
            w = (-1) ** sum(alpha) * c
            for a in alpha:
                w *= factorial(a)
            sums[(gamma, k)] = sums.get((gamma, k), Fraction(0)) + w
    for (gamma, k), v in sums.items():
        if v:
            fact = 1
            for g in gamma:
                fact *= factorial(g)
            key = ((0,) * n, gamma, k)
            out[key] = out.get(key, Fraction(0)) - v / ((-1) ** sum(gamma) * fact)
    return out


def check_matroid(rng: random.Random, count: int = 6, max_r: int = 8) -> Outcome:
    cases = 0
    for _ in range(count):
        n = rng.randint(2, 4)
        r = rng.randint(n, max_r)
        A = random_arrangement(rng, n, r)
        for size in range(1, r + 1):
            for S in combinations(A.indices, size):
                cases += 1
                if is_indecomposable(A, S) != is_indecomposable_bruteforce(A, S):
                    return Outcome("matroid blocks vs bipartition brute force", False, cases,
                                   f"forms={A.forms}, S={S}")
    return Outcome("matroid blocks vs bipartition brute force", True, cases)


def check_whitney(rng: random.Random, count: int = 10) -> Outcome:
    for case in range(count):
        n = rng.randint(2, 3)
        A = random_arrangement(rng, n, rng.randint(n, 6))
        cp = char_poly(A)
        counts = os_nbc(A).counts
        want = [abs(cp[A.n - k]) for k in range(len(counts))]
        lam = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in A.indices]
        if sum(lam) == 0:
            lam[0] += 1
        if counts != want or any(aomoto_betti(A, lam)):
            return Outcome("nbc counts and Aomoto vanishing", False, case + 1, f"forms={A.forms}")
    return Outcome("nbc counts and Aomoto vanishing", True, count)


def check_forms(rng: random.Random, count: int = 30) -> Outcome:
    for case in range(count):
        n = rng.randint(1, 4)
        d = rng.randint(1, 4)
        f = random_homogeneous(rng, n, d)
        p = rng.randint(0, n)
        w = random_form(rng, n, p)
        df = differential(f)
        ok = homotopy_lhs(f, w, d) == w * f
        ok = ok and wedge(df, omega0(n, d)) == DifferentialForm.volume(n) * f
        ok = ok and exterior_d(omega0(n, d)) == DifferentialForm.volume(n) * Fraction(n, d)
        ok = ok and exterior_d(exterior_d(w)) == DifferentialForm.zero(n, min(p + 2, n))
        if not ok:
            return Outcome("form identities", False, case + 1, f"f={f}, w={w}")
    return Outcome("form identities", True, count)


def check_euler_witness(rng: random.Random, count: int = 10) -> Outcome:
    for case in range(count):
        f = random_homogeneous(rng, rng.randint(1, 4), rng.randint(1, 4))
        if not euler_root_witness(f).verified:
            return Outcome("s f^s identity", False, case + 1, str(f))
    return Outcome("s f^s identity", True, count)


def run(seed: int = 0) -> List[Outcome]:
    rng = random.Random(seed)
    checks: List[Callable[[], Outcome]] = [
        check_antinormal,
        lambda: check_normalize(rng),
        lambda: check_ideal(rng),
        lambda: check_matroid(rng),
        lambda: check_whitney(rng),
        lambda: check_forms(rng),
        lambda: check_euler_witness(rng),
    ]
    return [c() for c in checks]
