"""Chebyshev polynomials, the rescaled T*, and the Chebyshev basis."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .poly_core import Endpoints, Poly, as_rat, eval_poly


@lru_cache(maxsize=None)
def cheb_T(n: int) -> Poly:
    """T_n via T_k = 2x T_{k-1} - T_{k-2}."""
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return Poly.x()
    two_x = Poly([0, 2])
    return two_x * cheb_T(n - 1) - cheb_T(n - 2)


@lru_cache(maxsize=None)
def cheb_U(n: int) -> Poly:
    """Second kind, same recurrence with U_1 = 2x; U_{-1} is taken as 0."""
    if n < -1:
        raise ValueError("Chebyshev index must be >= -1")
    if n == -1:
        return Poly()
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return Poly([0, 2])
    return Poly([0, 2]) * cheb_U(n - 1) - cheb_U(n - 2)


def cheb_T_explicit(n: int) -> Poly:
    """T_n from the closed sum (n/2) sum_k (-1)^k (n-k-1)!/(k!(n-2k)!) (2x)^(n-2k).

    Independent of the recurrence; used to cross-check it.
    """
    if n == 0:
        return Poly.const(1)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        c = Fraction(n, 2) * (-1) ** k * Fraction(
            math.factorial(n - k - 1), math.factorial(k) * math.factorial(n - 2 * k))
        coeffs[n - 2 * k] += c * 2 ** (n - 2 * k)
    return Poly(coeffs)


def cheb_U_explicit(n: int) -> Poly:
    """U_n = sum_k (-1)^k C(n-k, k) (2x)^(n-2k)."""
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] += (-1) ** k * math.comb(n - k, k) * 2 ** (n - 2 * k)
    return Poly(coeffs)


def cheb_star(s: int) -> Poly:
    """T*_s(x) = 2 T_s(x/2); monic of degree s."""
    if s < 1:
        raise ValueError("T* is defined for s >= 1")
    num, den = cheb_T(s).int_parts
    return Poly([Fraction(2 * c, den * 2 ** k) for k, c in enumerate(num)])


# ----------------------------------------------------------------------------
# basis change
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ChebSeries:
    """sum_i d[i] T_i, trailing zeros trimmed."""

    d: tuple[Fraction, ...]

    def __post_init__(self):
        d = [as_rat(c) for c in self.d]
        while d and d[-1] == 0:
            d.pop()
        object.__setattr__(self, "d", tuple(d))

    @property
    def n(self) -> int:
        if not self.d:
            raise ValueError("zero series has no top index")
        return len(self.d) - 1

    def coeff(self, i: int) -> Fraction:
        return self.d[i] if 0 <= i < len(self.d) else Fraction(0)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.d) if c]


def to_cheb(P: Poly) -> ChebSeries:
    # back-substitution against the triangular matrix of T_k coefficients
    rem = P
    d: list[Fraction] = [Fraction(0)] * len(P)
    while not rem.is_zero():
        k = int(rem.degree)
        d[k] = rem.lc / cheb_T(k).lc
        rem = rem - cheb_T(k) * d[k]
    return ChebSeries(tuple(d))


def from_cheb(S: ChebSeries) -> Poly:
    out = Poly()
    for i, c in enumerate(S.d):
        if c:
            out = out + cheb_T(i) * c
    return out


def ch(S: ChebSeries, i: int) -> Fraction:
    """Ch_i: the i-th Chebyshev coefficient counted from the top, d[n-i]."""
    n = S.n
    if not 0 <= i <= n:
        raise IndexError(f"Ch index {i} out of range for top index {n}")
    return S.d[n - i]


def endpoint_relation(m: int, e: Endpoints) -> bool:
    """T_m(a) == T_m(b), exactly."""
    T = cheb_T(m)
    return eval_poly(T, e.a) == eval_poly(T, e.b)


def support_pattern_check(S: ChebSeries, divisors: Iterable[int]) -> bool:
    """Every nonzero d_i with i >= 1 has i divisible by some element of `divisors`."""
    divs = [int(m) for m in divisors]
    if any(m < 1 for m in divs):
        raise ValueError("divisors must be positive")
    return all(any(i % m == 0 for m in divs) for i in S.support() if i >= 1)


def cheb_compose_index(V: Poly, m: int) -> ChebSeries:
    """Chebyshev series of V o T_m, built from T_k o T_m = T_km."""
    inner = to_cheb(V)
    d = [Fraction(0)] * (m * len(inner.d) if inner.d else 0)
    for k, c in enumerate(inner.d):
        if c:
            d[k * m] += c
    return ChebSeries(tuple(d))
