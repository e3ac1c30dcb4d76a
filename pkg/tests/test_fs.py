from fractions import Fraction
from math import prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ndroots.fs import (
    BSPair,
    FsElement,
    apply_to_fs,
    bs_pair_check,
    euler_root_witness,
    is_annihilator,
    t_shift,
)
from ndroots.parsing import parse_operator, parse_polynomial
from ndroots.polynomial import Polynomial, SPolynomial
from ndroots.weyl import WeylOperator, euler_operator
from tests.strategies import homogeneous, operators, polynomials
from tests.test_polynomial import X, to_sympy

S = sympy.Symbol("s")
Op, Pol = parse_operator, parse_polynomial


def sympy_apply(P, f):
    """``(P f^s) / f^s`` as a rational function, computed by sympy."""
    F = to_sympy(f)
    base = F ** S
    total = 0
    for (beta, alpha, k), c in P.items():
        h = base
        for i, a in enumerate(alpha):
            h = sympy.diff(h, X[i], a)
        total += sympy.Rational(c.numerator, c.denominator) * S ** k * prod(X[i] ** b for i, b in enumerate(beta)) * h
    return sympy.cancel(sympy.powsimp(sympy.expand(total / base), force=True))


def as_rational(e: FsElement):
    num = sum(S ** k * to_sympy(c) for k, c in enumerate(e.num.coeffs)) if not e.is_zero() else 0
    return sympy.cancel(num / to_sympy(e.f) ** e.m)


def b_coeffs(*roots):
    """Coefficients (constant first) of prod (s + r)."""
    poly = sympy.Poly(prod(S + sympy.Rational(r.numerator, r.denominator) for r in roots), S)
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))


class TestAction:
    def test_chain_rule(self):
        f = Pol("x1^2")
        got = apply_to_fs(Op("d1"), FsElement.fs(f))
        assert got == FsElement(f, SPolynomial.from_poly(Pol("2*x1")).times_s(), 1)

    def test_annihilator_example(self):
        f = Pol("x1*x2")
        assert apply_to_fs(Op("x1*d1 - x2*d2"), FsElement.fs(f)).is_zero()

    @given(homogeneous())
    def test_euler_operator_gives_s(self, f):
        E = euler_operator(f.n).scale(Fraction(1, f.degree()))
        fs = FsElement.fs(f)
        assert apply_to_fs(E, fs) == fs.times_s()

    @given(st.integers(1, 2).flatmap(lambda n: st.tuples(operators(n=n, with_s=True, max_terms=3),
                                                         polynomials(n=n, top=2, max_terms=3))))
    def test_matches_sympy(self, pf):
        P, f = pf
        if f.is_zero():
            return
        got = as_rational(apply_to_fs(P, FsElement.fs(f)))
        assert sympy.simplify(got - sympy_apply(P, f)) == 0

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(
        operators(n=n, with_s=True), operators(n=n, with_s=True), homogeneous(n=n), st.integers(1, n))))
    def test_d_linear(self, data):
        P, Q, f, i = data
        e = FsElement.fs(f)
        assert apply_to_fs(P + Q, e) == apply_to_fs(P, e) + apply_to_fs(Q, e)
        xi = Polynomial.var(f.n, i)
        assert apply_to_fs(WeylOperator.x(f.n, i) * P, e) == apply_to_fs(P, e) * xi

    @given(st.integers(1, 2).flatmap(lambda n: st.tuples(
        operators(n=n, max_terms=3), operators(n=n, max_terms=3), homogeneous(n=n, d=2))))
    def test_module_action(self, data):
        P, Q, f = data
        e = FsElement.fs(f)
        assert apply_to_fs(P * Q, e) == apply_to_fs(P, apply_to_fs(Q, e))


class TestShift:
    def test_examples(self):
        f = Pol("x1^2")
        fs = FsElement.fs(f)
        assert t_shift(fs) == FsElement.from_poly(f, f)
        s_plus_1 = SPolynomial.s(1) + SPolynomial.from_poly(Polynomial.one(1))
        assert t_shift(fs.times_s()) == FsElement(f, s_plus_1 * f)
        e = FsElement(f, SPolynomial.from_poly(Pol("2*x1")).times_s(), 1)
        assert t_shift(e) == FsElement(f, s_plus_1 * Pol("2*x1"))

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(homogeneous(n=n), polynomials(n=n), st.integers(0, 2))))
    def test_commutes_with_s_as_s_plus_1(self, data):
        f, g, m = data
        e = FsElement.from_poly(f, g, m)
        assert t_shift(e.times_s()) == t_shift(e).times_s() + t_shift(e)


class TestAnnihilators:
    def test_examples(self):
        assert is_annihilator(Op("x1*d1 - x2*d2"), Pol("x1*x2"))
        assert not is_annihilator(Op("d1"), Pol("x1"))
        assert not is_annihilator(Op("x2*d1"), Pol("x1^2 + x2^2"))
        assert is_annihilator(Op("x2*d1 - x1*d2"), Pol("x1^2 + x2^2"))


class TestBSPairs:
    def test_linear(self):
        assert bs_pair_check(BSPair(Op("d1"), (1, 1)), Pol("x1")).holds

    def test_normal_crossing(self):
        assert bs_pair_check(BSPair(Op("d1*d2"), (1, 2, 1)), Pol("x1*x2")).holds

    def test_wrong_b_residual(self):
        res = bs_pair_check(BSPair(Op("d1"), (2, 1)), Pol("x1"))
        assert not res.holds
        assert res.residual == -FsElement.fs(Pol("x1"))

    @pytest.mark.parametrize("a", [1, 2, 3, 4])
    def test_powers(self, a):
        f = Pol(f"x1^{a}")
        P = Op(f"d1^{a}").scale(Fraction(1, a ** a))
        b = b_coeffs(*[Fraction(i, a) for i in range(1, a + 1)])
        assert bs_pair_check(BSPair(P, b), f).holds
        bad = b_coeffs(*[Fraction(i, a) for i in range(1, a)] + [Fraction(a + 1, a)])
        res = bs_pair_check(BSPair(P, bad), f)
        assert not res.holds and not res.residual.is_zero()

    def test_preconditions(self):
        with pytest.raises(ValueError):
            bs_pair_check(BSPair(Op("d1"), (1, 1)), Pol("x1 + 1"))
        with pytest.raises(ValueError):
            bs_pair_check(BSPair(Op("d1"), (1, 1)), Polynomial.zero(1))


class TestEulerWitness:
    @pytest.mark.parametrize("text,ratio", [
        ("x1*x2*(x1+x2)", Fraction(2, 3)),
        ("x1", Fraction(1)),
        ("x1*x2*x3 + x1^2*x4 + x2^2*x4", Fraction(4, 3)),
    ])
    def test_examples(self, text, ratio):
        w = euler_root_witness(Pol(text))
        assert w.verified and w.n_over_d == ratio and w.candidate_root == -ratio

    @given(homogeneous())
    def test_random(self, f):
        assert euler_root_witness(f).verified

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError):
            euler_root_witness(Pol("x1^2 + x1"))
