from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from abelcenter import _kernels
from abelcenter.chebyshev import (
    ChebSeries,
    ch,
    cheb_compose_index,
    cheb_star,
    cheb_T,
    cheb_T_explicit,
    cheb_U,
    cheb_U_explicit,
    endpoint_relation,
    from_cheb,
    support_pattern_check,
    to_cheb,
)
from abelcenter.poly_core import Endpoints, Poly, compose, derivative, eval_poly

from conftest import X, from_sympy, polys


def test_base_cases():
    assert cheb_T(0) == Poly([1])
    assert cheb_T(1) == Poly.x()
    assert cheb_T(3) == Poly([0, -3, 0, 4])
    assert cheb_T(6) == Poly([-1, 0, 18, 0, -48, 0, 32])
    assert cheb_U(1) == Poly([0, 2])
    assert cheb_U(2) == Poly([-1, 0, 4])


@pytest.mark.parametrize("n", range(0, 21))
def test_matches_sympy(n):
    assert cheb_T(n) == from_sympy(sp.chebyshevt(n, X))
    assert cheb_U(n) == from_sympy(sp.chebyshevu(n, X))


@pytest.mark.parametrize("n", range(0, 21))
def test_closed_forms(n):
    assert cheb_T(n) == cheb_T_explicit(n)
    assert cheb_U(n) == cheb_U_explicit(n)


@pytest.mark.parametrize("n", range(1, 21))
def test_derivative_relation(n):
    assert derivative(cheb_T(n)) == cheb_U(n - 1) * n


def test_composition_table():
    for n in range(1, 13):
        for m in range(1, 13):
            assert compose(cheb_T(n), cheb_T(m)) == cheb_T(n * m)


@pytest.mark.parametrize("n", range(0, 31))
def test_parity_and_endpoint_values(n):
    T = cheb_T(n)
    assert compose(T, Poly([0, -1])) == T * (-1) ** n
    assert eval_poly(T, 1) == 1 and eval_poly(T, -1) == (-1) ** n


@pytest.mark.parametrize("n", [1, 5, 12, 30])
def test_trig_definition(n):
    phi = np.linspace(0, math.pi, 50)
    T, _ = _kernels.cheb_tu(n, np.cos(phi))
    np.testing.assert_allclose(T, np.cos(n * phi), atol=1e-12)


def test_cheb_star():
    assert cheb_star(1) == Poly.x()
    assert cheb_star(2) == Poly([-2, 0, 1])
    s6 = cheb_star(6)
    assert [s6.coeff(k) for k in (6, 4, 2, 0)] == [1, -6, 9, -2]
    for s in range(1, 15):
        P = cheb_star(s)
        assert P.lc == 1 and P == compose(cheb_T(s), Poly([0, Fraction(1, 2)])) * 2
        if s >= 4:
            assert P.coeff(s - 2) == -s and P.coeff(s - 4) == Fraction(s * (s - 3), 2)
    with pytest.raises(ValueError):
        cheb_star(0)


def test_basis_change_examples():
    assert to_cheb(Poly([0, 0, 1])).d == (Fraction(1, 2), 0, Fraction(1, 2))
    assert to_cheb(cheb_T(5)).d == (0, 0, 0, 0, 0, 1)
    assert to_cheb(Poly([0, 0, 0, 1])).d == (0, Fraction(3, 4), 0, Fraction(1, 4))


@given(polys(max_deg=8))
def test_basis_round_trip(P):
    assert from_cheb(to_cheb(P)) == P


def test_ch_accessor():
    assert ch(to_cheb(cheb_T(6)), 0) == 1
    assert ch(to_cheb(cheb_T(6) + cheb_T(3) * 5), 3) == 5
    assert ch(to_cheb(Poly([0, 0, 1])), 2) == Fraction(1, 2)
    with pytest.raises(IndexError):
        ch(to_cheb(cheb_T(2)), 3)


def test_endpoint_relation():
    assert endpoint_relation(2, Endpoints(Fraction(1, 2), Fraction(-1, 2)))
    assert not endpoint_relation(3, Endpoints(Fraction(1, 2), Fraction(-1, 2)))


def test_support_pattern():
    assert not support_pattern_check(to_cheb(cheb_T(7)), {3, 5})
    assert support_pattern_check(to_cheb(cheb_T(6) + cheb_T(10) + cheb_T(15)), {6, 10, 15})


@given(polys(max_deg=3), polys(max_deg=3))
def test_support_of_composed_sum(V1, V2):
    Q = compose(V1, cheb_T(3)) + compose(V2, cheb_T(5))
    assert support_pattern_check(to_cheb(Q), {3, 5})


@given(polys(max_deg=4), st.integers(1, 6))
def test_cheb_compose_index(V, m):
    assert from_cheb(cheb_compose_index(V, m)) == compose(V, cheb_T(m))


# --- top Chebyshev coefficients of V1 o T_m1 + V2 o T_m2 -------------------

COPRIME = [(m1, m2) for m1 in range(3, 8) for m2 in range(m1 + 1, 9) if math.gcd(m1, m2) == 1]


@st.composite
def two_index_sums(draw):
    m1, m2 = draw(st.sampled_from(COPRIME))
    d1 = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
    d2 = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
    S = ChebSeries(tuple(_spread(d1, m1, d2, m2)))
    assume(S.d and S.n >= 6)
    return m1, m2, S


def _spread(d1, m1, d2, m2):
    out = [Fraction(0)] * (max(len(d1) * m1, len(d2) * m2) + 1)
    for k, c in enumerate(d1):
        out[k * m1] += c
    for k, c in enumerate(d2):
        out[k * m2] += c
    return out


@given(two_index_sums())
def test_first_top_coefficient_pattern(case):
    m1, m2, S = case
    if ch(S, 1) != 0:
        assert ch(S, 2) == 0
        if ch(S, 3) != 0:
            assert 3 in (m1, m2)
            assert ch(S, 4) == 0


@given(two_index_sums())
def test_one_of_three_even_top_coefficients_vanishes(case):
    _, _, S = case
    assert 0 in (ch(S, 2), ch(S, 4), ch(S, 6))


def test_two_index_pattern_exhaustive():
    # every support pattern of V1 o T_m1 + V2 o T_m2 up to degree 40
    for m1, m2 in COPRIME:
        for n in range(6, 41):
            if n % m1 and n % m2:
                continue
            live = [k for k in range(1, 7) if (n - k) % m1 == 0 or (n - k) % m2 == 0]
            if 1 in live:
                assert 2 not in live
                if 3 in live:
                    assert 3 in (m1, m2) and 4 not in live
            assert not {2, 4, 6} <= set(live)
