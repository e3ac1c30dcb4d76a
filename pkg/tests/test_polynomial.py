from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ndroots.parsing import ParseError, parse_polynomial, parse_univariate_s, univariate_str
from ndroots.polynomial import (
    ANY_DEGREE,
    DimensionError,
    Polynomial,
    SPolynomial,
    divides_exact,
    fraction_str,
    is_homogeneous,
)
from tests.strategies import homogeneous, polynomials, small_fractions

X = sympy.symbols("x1:5")


def to_sympy(p: Polynomial):
    return sympy.Add(*[
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[X[i] ** k for i, k in enumerate(e)])
        for e, c in p.items()
    ])


def from_sympy(expr, n):
    poly = sympy.Poly(sympy.expand(expr), *X[:n])
    return Polynomial(n, {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


def same(p, expr):
    return sympy.expand(to_sympy(p) - expr) == 0


class TestArithmetic:
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n=n), polynomials(n=n))))
    def test_ring_ops_match_sympy(self, pq):
        p, q = pq
        P, Q = to_sympy(p), to_sympy(q)
        assert same(p + q, P + Q)
        assert same(p - q, P - Q)
        assert same(p * q, P * Q)
        assert same(p ** 2, P ** 2)

    @given(polynomials(n=3), st.integers(1, 3))
    def test_diff_matches_sympy(self, p, i):
        assert same(p.diff(i), sympy.diff(to_sympy(p), X[i - 1]))
        assert same(p.diff(i, 2), sympy.diff(to_sympy(p), X[i - 1], 2))

    @given(polynomials(n=2), st.tuples(small_fractions, small_fractions))
    def test_evaluate_matches_sympy(self, p, pt):
        want = to_sympy(p).subs({X[0]: sympy.Rational(pt[0].numerator, pt[0].denominator),
                                 X[1]: sympy.Rational(pt[1].numerator, pt[1].denominator)})
        got = p.evaluate(pt)
        assert sympy.Rational(got.numerator, got.denominator) == want

    def test_compose_linear(self):
        f = parse_polynomial("x1*x2")
        g = f.compose_linear([[1, 1], [1, -1]])
        assert g == parse_polynomial("x1^2 - x2^2")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            Polynomial.var(2, 1) + Polynomial.var(3, 1)

    def test_zero_coefficients_dropped(self):
        p = Polynomial(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
        assert p.terms == {(0, 1): Fraction(2)}
        assert (p - p).is_zero()

    def test_sympy_roundtrip(self):
        p = parse_polynomial("1/2*x1^2*x2 - 3*x2 + 7")
        assert from_sympy(to_sympy(p), 2) == p


class TestExactDivision:
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n=n), polynomials(n=n))))
    def test_multiply_back(self, pq):
        f, q = pq
        if f.is_zero():
            return
        assert divides_exact(f, f * q) == q

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomials(n=n), polynomials(n=n))))
    def test_agrees_with_sympy(self, pq):
        f, g = pq
        if f.is_zero():
            return
        q, r = sympy.div(to_sympy(g), to_sympy(f), *X[:f.n])
        got = divides_exact(f, g)
        if sympy.expand(r) == 0:
            assert got is not None and same(got, q)
        else:
            assert got is None

    def test_nondivisible(self):
        assert divides_exact(parse_polynomial("x1+x2"), parse_polynomial("x1*x2")) is None

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            divides_exact(Polynomial.zero(1), Polynomial.one(1))


class TestHomogeneity:
    @given(homogeneous())
    def test_degree_detected(self, f):
        assert is_homogeneous(f) == f.degree()

    def test_mixed(self):
        assert is_homogeneous(parse_polynomial("x1^2 + x2")) is None

    def test_zero_any_degree(self):
        assert is_homogeneous(Polynomial.zero(2)) is ANY_DEGREE


class TestSerialization:
    @given(polynomials())
    def test_json_roundtrip(self, p):
        assert Polynomial.from_json(p.to_json(), p.n) == p

    @given(polynomials())
    def test_text_roundtrip(self, p):
        assert parse_polynomial(str(p), p.n) == p

    def test_fraction_strings(self):
        assert fraction_str(Fraction(3)) == "3/1"
        assert fraction_str(Fraction(-1, 2)) == "-1/2"
        assert fraction_str(Fraction(0)) == "0/1"

    def test_univariate(self):
        b = parse_univariate_s("(s+1)^2")
        assert b == (1, 2, 1)
        assert univariate_str(b) == "s^2 + 2*s + 1"

    @pytest.mark.parametrize("bad", ["x1 +", "x0", "x1^y", "d1", "x1 $ 2", ""])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            parse_polynomial(bad)


class TestSPolynomial:
    def test_shift(self):
        s = SPolynomial.s(1)
        sq = s * s
        assert sq.shift() == sq + s * 2 + SPolynomial.from_poly(Polynomial.one(1))

    def test_divide_exact(self):
        f = parse_polynomial("x1*x2")
        num = SPolynomial.from_poly(f * parse_polynomial("x1", 2)) * SPolynomial.s(2)
        assert num.divide_exact(f) == SPolynomial.from_poly(parse_polynomial("x1", 2)) * SPolynomial.s(2)
        assert SPolynomial.from_poly(parse_polynomial("x1", 2)).divide_exact(f) is None
