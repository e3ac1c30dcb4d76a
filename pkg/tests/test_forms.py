from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from ndroots.forms import (
    DifferentialForm,
    differential,
    euler_contraction,
    exterior_d,
    homotopy_lhs,
    omega0,
    sort_with_sign,
    wedge,
)
from ndroots.parsing import parse_polynomial
from ndroots.polynomial import Polynomial
from tests.strategies import forms, homogeneous
from tests.test_polynomial import X, to_sympy

P = parse_polynomial


def sympy_d(omega):
    """Exterior derivative computed with sympy and permutation parity."""
    out = {}
    for key, g in omega.components.items():
        for i in range(1, omega.n + 1):
            if i in key:
                continue
            idx = (i,) + key
            order = sorted(idx)
            sign = Permutation([order.index(v) for v in idx]).signature()
            term = sign * sympy.diff(to_sympy(g), X[i - 1])
            out[tuple(order)] = out.get(tuple(order), 0) + term
    return {k: sympy.expand(v) for k, v in out.items() if sympy.expand(v) != 0}


def as_sympy(omega):
    return {k: sympy.expand(to_sympy(g)) for k, g in omega.components.items()}


@st.composite
def form_pairs(draw):
    n = draw(st.integers(1, 4))
    p = draw(st.integers(0, n))
    q = draw(st.integers(0, n - p))
    return draw(forms(n, p)), draw(forms(n, q))


class TestExamples:
    def test_d_omega0(self):
        assert exterior_d(omega0(2, 2)) == DifferentialForm.volume(2)

    def test_d_closed(self):
        assert exterior_d(DifferentialForm.basis(2, (1,), P("x1", 2))).is_zero()

    def test_sign_convention(self):
        got = exterior_d(DifferentialForm.basis(2, (1,), P("x2")))
        assert got == DifferentialForm.basis(2, (1, 2)) * -1

    def test_wedge_basics(self):
        dx1 = DifferentialForm.basis(2, (1,))
        dx2 = DifferentialForm.basis(2, (2,))
        assert wedge(dx1, dx2) == DifferentialForm.basis(2, (1, 2))
        assert wedge(dx1, dx1).is_zero()

    def test_df_wedge_omega0(self):
        f = P("x1*x2")
        assert wedge(differential(f), omega0(2, 2)) == DifferentialForm.volume(2) * f

    def test_contraction_of_volume(self):
        got = euler_contraction(DifferentialForm.volume(2), 2)
        want = DifferentialForm(2, 1, {(2,): P("1/2*x1", 2), (1,): P("-1/2*x2")})
        assert got == want

    def test_contraction_squares_to_zero(self):
        assert euler_contraction(euler_contraction(DifferentialForm.volume(3), 1), 1).is_zero()

    def test_contraction_of_df(self):
        f = P("x1^2*x2 + 3*x2^3")
        assert euler_contraction(differential(f), 3) == DifferentialForm.function(f)

    def test_omega0_small(self):
        assert omega0(2, 3) == DifferentialForm(2, 1, {(2,): P("1/3*x1", 2), (1,): P("-1/3*x2")})
        assert omega0(1, 1) == DifferentialForm.function(P("x1"))
        w = omega0(4, 3)
        assert len(w.components) == 4
        assert w.coeff((1, 3, 4)) == Polynomial.var(4, 2).scale(Fraction(-1, 3))

    def test_sort_with_sign(self):
        assert sort_with_sign((2, 1, 3)) == (-1, (1, 2, 3))
        assert sort_with_sign((3, 1, 2)) == (1, (1, 2, 3))
        assert sort_with_sign((1, 1)) == (0, None)

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            DifferentialForm(2, 3)


class TestProperties:
    @given(st.integers(1, 5).flatmap(lambda n: st.integers(0, n).flatmap(lambda p: forms(n, p))))
    def test_d_squared_zero(self, w):
        assert exterior_d(exterior_d(w)).is_zero()

    @given(st.integers(1, 3).flatmap(lambda n: st.integers(0, n).flatmap(lambda p: forms(n, p))))
    def test_d_matches_sympy(self, w):
        if w.p == w.n:
            assert exterior_d(w).is_zero()
        else:
            assert as_sympy(exterior_d(w)) == sympy_d(w)

    @given(form_pairs())
    def test_wedge_graded_commutative(self, pair):
        w, e = pair
        assert wedge(w, e) == wedge(e, w) * (-1) ** (w.p * e.p)

    @given(form_pairs())
    def test_leibniz(self, pair):
        w, e = pair
        if w.p + e.p >= w.n:
            return
        lhs = exterior_d(wedge(w, e))
        rhs = wedge(exterior_d(w), e) + wedge(w, exterior_d(e)) * (-1) ** w.p
        assert lhs == rhs

    @given(st.data())
    def test_homotopy_identity(self, data):
        f = data.draw(homogeneous())
        p = data.draw(st.integers(0, f.n))
        w = data.draw(forms(f.n, p))
        assert homotopy_lhs(f, w, f.degree()) == w * f

    @given(homogeneous())
    def test_omega0_identities(self, f):
        n, d = f.n, f.degree()
        assert wedge(differential(f), omega0(n, d)) == DifferentialForm.volume(n) * f
        assert exterior_d(omega0(n, d)) == DifferentialForm.volume(n) * Fraction(n, d)
