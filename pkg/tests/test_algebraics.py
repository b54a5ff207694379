from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from abelcenter.algebraics import (
    CASE2_CLAIM_FROM,
    EQUATIONS,
    AlgebraicNumberSpec,
    HypothesisError,
    UnsupportedDegree,
    corollary_lal_check,
    count_all_real_roots,
    count_real_roots,
    doubled_critical_points_integral,
    doubled_critical_polynomial,
    eq_azx,
    eq_azxx,
    eq_azxx_plus,
    eq_kon,
    eq_ur,
    eq_xza,
    irreducible_factors,
    is_algebraic_integer,
    kon_roots,
    minimal_polynomial,
    some_root_integral,
    squarefree_part,
)
from abelcenter.chebyshev import cheb_U
from abelcenter.poly_core import Poly, compose, poly_divmod

from conftest import X, from_sympy, polys, to_sympy


def test_minimal_polynomial_examples():
    assert minimal_polynomial(AlgebraicNumberSpec(Poly([-4, 0, 1]))) == [Poly([-2, 1]), Poly([2, 1])]
    assert minimal_polynomial(AlgebraicNumberSpec(Poly([1, 0, -3, 0, 1]))) == [
        Poly([-1, -1, 1]), Poly([-1, 1, 1])]
    assert minimal_polynomial(AlgebraicNumberSpec(Poly([-3, 0, 5]))) == [Poly([Fraction(-3, 5), 0, 1])]


def test_quartic_splits_into_integral_quadratics():
    # t^4 - 3t^2 + 1 = (t^2 - t - 1)(t^2 + t - 1): no rational roots, but a quadratic split exists
    _, facs = sp.factor_list(X**4 - 3 * X**2 + 1)
    ref = sorted((from_sympy(f) for f, _ in facs), key=lambda F: F.coeffs)
    assert irreducible_factors(Poly([1, 0, -3, 0, 1])) == ref


def test_interval_selector():
    spec = AlgebraicNumberSpec(Poly([-4, 0, 1]), (0, 3))
    assert minimal_polynomial(spec) == Poly([-2, 1])
    with pytest.raises(ValueError, match="holds 2 real roots"):
        AlgebraicNumberSpec(Poly([-4, 0, 1]), (-3, 3))


def test_degree_limits():
    with pytest.raises(UnsupportedDegree):
        AlgebraicNumberSpec(Poly.monomial(5))
    with pytest.raises(ValueError):
        AlgebraicNumberSpec(Poly([3]))


def test_is_algebraic_integer_examples():
    assert is_algebraic_integer(AlgebraicNumberSpec(Poly([1, 0, -3, 0, 1])))
    assert not is_algebraic_integer(AlgebraicNumberSpec(Poly([Fraction(-3, 5), 0, 1])))
    assert is_algebraic_integer(AlgebraicNumberSpec(Poly([-2, 1])))


@st.composite
def small_int_polys(draw):
    deg = draw(st.integers(1, 4))
    cs = draw(st.lists(st.integers(-6, 6), min_size=deg + 1, max_size=deg + 1))
    assume(cs[-1] != 0)
    return Poly(cs)


@given(small_int_polys())
def test_factors_match_sympy(P):
    ours = irreducible_factors(P)
    _, facs = sp.factor_list(to_sympy(P).as_expr(), X)
    ref = sorted((from_sympy(sp.Poly(f, X).monic().as_expr()) for f, _ in facs if sp.degree(f, X) > 0),
                 key=lambda F: (int(F.degree), F.coeffs))
    assert ours == ref


@given(small_int_polys())
def test_minimal_polynomials_are_monic_divisors(P):
    sq = squarefree_part(P)
    for F in minimal_polynomial(AlgebraicNumberSpec(P)):
        assert F.lc == 1
        assert poly_divmod(sq, F)[1].is_zero()


@given(small_int_polys())
def test_integrality_stable_under_sign_flip(P):
    flipped = compose(P, Poly([0, -1]))
    assert (is_algebraic_integer(AlgebraicNumberSpec(P))
            == is_algebraic_integer(AlgebraicNumberSpec(flipped)))


@given(small_int_polys())
def test_integrality_matches_sympy(P):
    _, facs = sp.factor_list(to_sympy(P).as_expr(), X)
    ref = all(all(c.is_integer for c in sp.Poly(f, X).monic().all_coeffs())
              for f, _ in facs if sp.degree(f, X) > 0)
    assert is_algebraic_integer(AlgebraicNumberSpec(P)) == ref


@given(polys(min_deg=1, max_deg=6, bound=3), st.integers(-4, 3))
def test_sturm_counts_match_sympy(P, lo):
    roots = set(sp.real_roots(to_sympy(P)))
    assert count_real_roots(P, lo, lo + 2) == sum(1 for r in roots if lo < r <= lo + 2)
    assert count_all_real_roots(P) == len(roots)


# --- equations -------------------------------------------------------------

def test_equation_examples():
    assert eq_ur(6) == Poly([120, 0, -360, 0, 120])
    assert eq_ur(6) / 120 == Poly([1, 0, -3, 0, 1])
    assert eq_azx(6) == Fraction(3, 20)
    assert eq_kon(6) == Poly([2, -16, 20])
    assert eq_azxx(8) == (Fraction(6, 105), Fraction(12, 15))
    assert eq_azxx_plus(8) == (Fraction(12, 105), Fraction(9, 15))
    assert eq_xza(6) == Poly([1, 0, -12, 0, 16])


def test_kon_roots_match_quadratic_formula():
    t = sp.Symbol("t")
    ref = sorted(float(r) for r in sp.solve(20 * t**2 - 16 * t + 2, t))
    lo, hi = kon_roots(6)
    assert abs(lo - ref[0]) < 1e-14 and abs(hi - ref[1]) < 1e-14
    assert round(lo, 3) == 0.155 and round(hi, 3) == 0.645


@pytest.mark.parametrize("name", sorted(EQUATIONS))
def test_thresholds(name):
    lo = 5 if name.startswith("azxx") else 6
    EQUATIONS[name](lo)
    with pytest.raises(HypothesisError):
        EQUATIONS[name](lo - 1)


def test_lal_examples():
    assert corollary_lal_check(7, "case1")
    assert corollary_lal_check(9, "case2")
    assert not corollary_lal_check(6, "case2")
    with pytest.raises(HypothesisError):
        corollary_lal_check(5, "case1")
    with pytest.raises(ValueError):
        corollary_lal_check(9, "case3")


def test_lal_ranges():
    assert all(corollary_lal_check(n, "case1") for n in range(6, 41))
    assert all(corollary_lal_check(n, "case2") for n in range(CASE2_CLAIM_FROM, 41))


@pytest.mark.parametrize("n", range(6, 13))
def test_case2_agrees_with_sympy(n):
    _, facs = sp.factor_list(to_sympy(eq_ur(n)).as_expr(), X)
    integral = any(all(c.is_integer for c in sp.Poly(f, X).monic().all_coeffs())
                   for f, _ in facs if sp.degree(f, X) > 0)
    assert corollary_lal_check(n, "case2") == (not integral)
    assert some_root_integral(eq_ur(n)) == integral


@pytest.mark.parametrize("n", range(2, 11))
def test_doubled_critical_points(n):
    R = doubled_critical_polynomial(n)
    assert R.lc == 1 and all(c.denominator == 1 for c in R.coeffs)
    assert doubled_critical_points_integral(n)
    assert R == compose(cheb_U(n - 1), Poly([0, Fraction(1, 2)]))
    # the roots are 2 cos(k pi / n)
    roots = sorted(float(r) for r in sp.Poly(to_sympy(R).as_expr(), X).nroots())
    assert all(abs(r - 2 * math.cos(k * math.pi / n)) < 1e-9
               for r, k in zip(roots, range(n - 1, 0, -1)))
