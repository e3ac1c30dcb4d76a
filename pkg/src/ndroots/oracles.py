"""Brute-force reference computations, kept independent of the fast paths.

Used by the test-suite and by ``ndroots selftest``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from .polynomial import MultiIndex

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


def _rewrite(words: Dict[Word, Fraction], d_first: bool) -> Dict[Word, Fraction]:
    """Bubble letters into order using only ``[d_i, x_i] = 1`` and commutation.

    Letters are grouped by variable index (different indices commute), and
    within one index the d's go first (``d_first``) or last.  Equal words are
    merged after every sweep.
    """

    def key(letter: Letter):
        kind, i = letter
        if d_first:
            return (i, 0 if kind == "d" else 1)
        return (i, 0 if kind == "x" else 1)

    done: Dict[Word, Fraction] = {}
    todo = dict(words)
    while todo:
        nxt: Dict[Word, Fraction] = {}
        for w, c in todo.items():
            if not c:
                continue
            for p in range(len(w) - 1):
                a, b = w[p], w[p + 1]
                if key(a) > key(b):
                    swapped = w[:p] + (b, a) + w[p + 2:]
                    nxt[swapped] = nxt.get(swapped, Fraction(0)) + c
                    if a[1] == b[1]:
                        shorter = w[:p] + w[p + 2:]
                        # d x = x d + 1   and   x d = d x - 1
                        nxt[shorter] = nxt.get(shorter, Fraction(0)) + (c if a[0] == "d" else -c)
                    break
            else:
                done[w] = done.get(w, Fraction(0)) + c
        todo = nxt
    return {w: c for w, c in done.items() if c}


def _word(n: int, first: Tuple[str, MultiIndex], second: Tuple[str, MultiIndex]) -> Word:
    out: List[Letter] = []
    for kind, exps in (first, second):
        for i, e in enumerate(exps, start=1):
            out.extend([(kind, i)] * e)
    return tuple(out)


def _exponents(w: Word, n: int) -> Tuple[MultiIndex, MultiIndex]:
    xs, ds = [0] * n, [0] * n
    for kind, i in w:
        (xs if kind == "x" else ds)[i - 1] += 1
    return tuple(xs), tuple(ds)


def antinormal_bruteforce(beta: MultiIndex, alpha: MultiIndex) -> Dict[Tuple[MultiIndex, MultiIndex], Fraction]:
    """``x^beta d^alpha`` rewritten to ``{(d-exp, x-exp): c}`` by commutator moves."""
    n = len(beta)
    res = _rewrite({_word(n, ("x", beta), ("d", alpha)): Fraction(1)}, d_first=True)
    out = {}
    for w, c in res.items():
        xs, ds = _exponents(w, n)
        out[(ds, xs)] = out.get((ds, xs), Fraction(0)) + c
    return out


def normal_bruteforce(word: Word, n: int) -> Dict[Tuple[MultiIndex, MultiIndex], Fraction]:
    """An arbitrary word rewritten to ``{(x-exp, d-exp): c}``."""
    res = _rewrite({tuple(word): Fraction(1)}, d_first=False)
    out = {}
    for w, c in res.items():
        xs, ds = _exponents(w, n)
        out[(xs, ds)] = out.get((xs, ds), Fraction(0)) + c
    return out


def antinormal_operator_bruteforce(terms, n: int) -> Dict[Tuple[MultiIndex, MultiIndex, int], Fraction]:
    """Anti-normal form of ``{(beta, alpha, k): c}`` by rewriting every term."""
    out: Dict[Tuple[MultiIndex, MultiIndex, int], Fraction] = {}
    for (beta, alpha, k), c in terms.items():
        for (ds, xs), w in antinormal_bruteforce(beta, alpha).items():
            key = (ds, xs, k)
            out[key] = out.get(key, Fraction(0)) + c * w
    return {k: v for k, v in out.items() if v}


def ideal_by_inspection(terms, n: int) -> bool:
    """``P in D<x>`` iff its anti-normal form has no term with x-exponent zero."""
    an = antinormal_operator_bruteforce(terms, n)
    return not any(not any(xs) for (_, xs, _) in an)


def constant_block(terms, n: int) -> Dict[Tuple[MultiIndex, int], Fraction]:
    """Coefficients of the pure ``d^gamma s^k`` terms in anti-normal form."""
    an = antinormal_operator_bruteforce(terms, n)
    return {(ds, k): c for (ds, xs, k), c in an.items() if not any(xs)}


def all_index_pairs(n: int, top: int):
    rng = range(top + 1)
    for beta in product(rng, repeat=n):
        for alpha in product(rng, repeat=n):
            yield beta, alpha


def random_operator_terms(rng: random.Random, n: int, nterms: int = 4, top: int = 2,
                          graded: bool = False):
    """Random ``{(beta, alpha, 0): c}``; with ``graded`` all terms share |alpha|-|beta|."""
    terms = {}
    k = rng.randint(-1, 2)
    for _ in range(nterms * 10):
        if len(terms) >= nterms:
            break
        beta = tuple(rng.randint(0, top) for _ in range(n))
        alpha = tuple(rng.randint(0, top) for _ in range(n))
        if graded and sum(alpha) - sum(beta) != k:
            continue
        terms[(beta, alpha, 0)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return {key: c for key, c in terms.items() if c}
