"""Functional decomposition of rational polynomials.

Right factors are reported in the normal form "monic, zero constant term",
which fixes the affine ambiguity P = A o B = (A o mu^-1) o (mu o B).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .chebyshev import cheb_T
from .poly_core import (
    LinearMap,
    Poly,
    coeff_from_top,
    compose,
    monic_zero_const,
    poly_divmod,
    rat_sqrt,
)


@dataclass(frozen=True)
class DecompositionPair:
    outer: Poly
    inner: Poly


@dataclass(frozen=True)
class ChebConjugacy:
    """P = outer o T_m o mu."""

    outer: Poly
    m: int
    mu: LinearMap

    def rebuild(self) -> Poly:
        return compose(compose(self.outer, cheb_T(self.m)), self.mu.as_poly())


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _basis_expansion(P: Poly, B: Poly) -> Optional[Poly]:
    """A with P = A o B, provided every remainder of repeated division is constant."""
    digits = []
    rem = P
    while not rem.is_zero():
        rem, r = poly_divmod(rem, B)
        if r.degree > 0:
            return None
        digits.append(r.coeff(0))
    return Poly(digits)


def _right_factor(P: Poly, d: int) -> Optional[DecompositionPair]:
    """Like right_factor but also accepts d = 1 and d = deg P."""
    n = int(P.degree)
    if n % d:
        return None
    if d == 1:
        return DecompositionPair(P, Poly.x())
    if d == n:
        B = monic_zero_const(P)
        return DecompositionPair(Poly([P.coeff(0), P.lc]), B)
    r = n // d
    c = P.lc
    b = [Fraction(0)] * (d + 1)
    b[d] = Fraction(1)
    # C_i(P) = C_i(c B^r) for i < d; each step is linear in the next unknown
    for i in range(1, d):
        cur = Poly(b) ** r * c
        b[d - i] = (coeff_from_top(P, i) - coeff_from_top(cur, i)) / (c * r)
    B = Poly(b)
    A = _basis_expansion(P, B)
    if A is None or compose(A, B) != P:
        return None
    return DecompositionPair(A, B)


def right_factor(P: Poly, d: int) -> Optional[DecompositionPair]:
    """Decompose P = A o B with deg B = d and B normalized, or None."""
    if P.degree < 3:
        raise ValueError("right_factor needs deg P >= 3 to have a proper factor")
    n = int(P.degree)
    if not 2 <= d < n:
        raise ValueError(f"factor degree {d} outside [2, {n})")
    if n % d:
        raise ValueError(f"factor degree {d} does not divide {n}")
    return _right_factor(P, d)


def all_decompositions(P: Poly) -> list[DecompositionPair]:
    if P.degree < 2:
        raise ValueError("all_decompositions needs deg P >= 2")
    n = int(P.degree)
    out = []
    for d in divisors(n):
        if 2 <= d < n:
            pair = _right_factor(P, d)
            if pair is not None:
                out.append(pair)
    return out


def common_right_factors(P: Poly, Q: Poly) -> list[DecompositionPair]:
    """Every normalized W, deg W >= 2, with P, Q in Q[W]; highest degree first.

    Each entry stores W as `inner`; `outer` is left as P's outer factor.
    Use :func:`common_witness` for both outers.
    """
    return [DecompositionPair(pp.outer, pp.inner) for pp, _ in _common(P, Q)]


def _common(P: Poly, Q: Poly):
    if P.degree < 1 or Q.degree < 1:
        raise ValueError("common right factors need nonconstant inputs")
    g = math.gcd(int(P.degree), int(Q.degree))
    for d in sorted(divisors(g), reverse=True):
        if d < 2:
            continue
        fp = _right_factor(P, d)
        if fp is None:
            continue
        fq = _right_factor(Q, d)
        if fq is not None and fq.inner == fp.inner:
            yield fp, fq


def common_right_factor(P: Poly, Q: Poly) -> Optional[Poly]:
    """The maximal-degree normalized common right factor, or None."""
    for fp, _ in _common(P, Q):
        return fp.inner
    return None


def common_witness(P: Poly, Q: Poly):
    """Yield (W, Ptilde, Qtilde) for every common right factor, highest degree first."""
    for fp, fq in _common(P, Q):
        yield fp.inner, fp.outer, fq.outer


def reduce_pair(P: Poly, Q: Poly) -> tuple[Poly, Poly, Poly]:
    """(Ptilde, Qtilde, W) with P = Ptilde o W, Q = Qtilde o W and no further common factor."""
    for W, Pt, Qt in common_witness(P, Q):
        return Pt, Qt, W
    return P, Q, Poly.x()


def detect_shift_even(P: Poly) -> Optional[Fraction]:
    """delta with P(x + delta) even, if any."""
    if P.degree < 2:
        raise ValueError("detect_shift_even needs deg P >= 2")
    n = int(P.degree)
    if n % 2:
        return None
    delta = -coeff_from_top(P, 1) / (n * coeff_from_top(P, 0))
    shifted = compose(P, Poly([delta, 1]))
    if any(shifted.coeff(k) for k in range(1, n, 2)):
        return None
    return delta


def detect_cheb_conjugate(P: Poly, m: int) -> Optional[ChebConjugacy]:
    """Find U and mu = alpha x + beta over Q with P = U o T_m o mu."""
    if m < 2:
        raise ValueError("Chebyshev index must be >= 2")
    if P.degree < 1 or int(P.degree) % m:
        raise ValueError(f"{m} does not divide deg P = {P.degree}")
    pair = _right_factor(P, m)
    if pair is None:
        return None
    B = pair.inner
    ratio = B.coeff(m - 1) / m  # beta/alpha
    if m == 2:
        alpha = Fraction(1)  # every shifted square normalizes alike
    else:
        inv_alpha_sq = (Fraction(m * (m - 1), 2) * ratio ** 2 - B.coeff(m - 2)) * Fraction(4, m)
        alpha = rat_sqrt(inv_alpha_sq)
        if not alpha:
            return None
        alpha = 1 / alpha
    mu = LinearMap(alpha, alpha * ratio)
    Tmu = compose(cheb_T(m), mu.as_poly())
    if monic_zero_const(Tmu) != B:
        return None
    lead, const = Tmu.lc, Tmu.coeff(0)
    U = compose(pair.outer, Poly([-const / lead, 1 / lead]))
    conj = ChebConjugacy(U, m, mu)
    if conj.rebuild() != P:
        return None
    return conj
