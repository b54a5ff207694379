from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from abelcenter.poly_core import Poly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

X = sp.Symbol("x")


def rationals(bound: int = 5, max_den: int = 4):
    return st.builds(Fraction, st.integers(-bound * max_den, bound * max_den),
                     st.integers(1, max_den))


def polys(min_deg: int = 0, max_deg: int = 4, bound: int = 5):
    """Polynomials of exact degree in [min_deg, max_deg] (the zero poly only if max_deg < 0)."""
    @st.composite
    def build(draw):
        deg = draw(st.integers(min_deg, max_deg))
        cs = draw(st.lists(rationals(bound), min_size=deg + 1, max_size=deg + 1))
        if cs[-1] == 0:
            cs[-1] = Fraction(1)
        return Poly(cs)
    return build()


def to_sympy(P: Poly):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(P.coeffs)] or [0], X)


def from_sympy(expr) -> Poly:
    cs = sp.Poly(expr, X).all_coeffs()[::-1]
    return Poly([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in cs])
