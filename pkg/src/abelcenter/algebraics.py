"""Small-degree algebraic numbers: factoring over Q up to degree 4, algebraic-integer
tests, real-root isolation by Sturm sequences, and the closed-form constraint
equations that arise for the Chebyshev coefficient obstructions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .chebyshev import cheb_U
from .poly_core import Poly, as_rat, compose, derivative, eval_poly, poly_divmod, poly_gcd

MAX_DEGREE = 4


class UnsupportedDegree(ValueError):
    pass


class HypothesisError(ValueError):
    """Parameter outside the range where the stated equation is claimed."""


# ----------------------------------------------------------------------------
# root counting
# ----------------------------------------------------------------------------

def squarefree_part(P: Poly) -> Poly:
    if P.degree < 1:
        return P
    g = poly_gcd(P, derivative(P))
    return poly_divmod(P, g)[0] if g.degree >= 1 else P


def sturm_sequence(P: Poly) -> list[Poly]:
    seq = [P, derivative(P)]
    while not seq[-1].is_zero():
        r = poly_divmod(seq[-2], seq[-1])[1]
        seq.append(-r)
    seq.pop()
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(P: Poly, lo, hi) -> int:
    """Distinct real roots of P in the half-open interval (lo, hi]."""
    lo, hi = as_rat(lo), as_rat(hi)
    if lo >= hi:
        raise ValueError("need lo < hi")
    seq = sturm_sequence(squarefree_part(P))
    return (_sign_changes([eval_poly(s, lo) for s in seq])
            - _sign_changes([eval_poly(s, hi) for s in seq]))


def count_all_real_roots(P: Poly) -> int:
    seq = sturm_sequence(squarefree_part(P))

    def at_inf(s: Poly, sign: int):
        return s.lc * (sign ** int(s.degree))

    return (_sign_changes([at_inf(s, -1) for s in seq])
            - _sign_changes([at_inf(s, 1) for s in seq]))


# ----------------------------------------------------------------------------
# factoring at degree <= 4
# ----------------------------------------------------------------------------

def _primitive_ints(P: Poly) -> list[int]:
    num, _ = P.int_parts
    g = math.gcd(*num)
    sign = -1 if num[-1] < 0 else 1
    return [sign * c // g for c in num]


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_root(f: list[int]) -> Optional[Fraction]:
    if f[0] == 0:
        return Fraction(0)
    for p in _int_divisors(f[0]):
        for q in _int_divisors(f[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if eval_poly(Poly(f), r) == 0:
                    return r
    return None


def _quadratic_split(f: list[int]) -> Optional[tuple[Poly, Poly]]:
    """(a1 t^2 + b1 t + c1)(a2 t^2 + b2 t + c2) = f over Z, f primitive of degree 4."""
    E, D, C, B, A = f
    for a1 in _int_divisors(A):
        a2 = A // a1
        for c1 in _int_divisors(E):
            for c1s in (c1, -c1):
                c2 = E // c1s
                det = a2 * c1s - a1 * c2
                cands = []
                if det:
                    # a2 b1 + a1 b2 = B ; c2 b1 + c1 b2 = D
                    n1, n2 = B * c1s - a1 * D, a2 * D - c2 * B
                    if n1 % det == 0 and n2 % det == 0:
                        cands.append((n1 // det, n2 // det))
                else:
                    # b2 = (B - a2 b1)/a1 and b1 b2 = C - a1 c2 - a2 c1
                    rest = C - a1 * c2 - a2 * c1s
                    disc = B * B - 4 * a2 * a1 * rest
                    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                        r = math.isqrt(disc)
                        for num in (B + r, B - r):
                            if num % (2 * a2) == 0:
                                b1 = num // (2 * a2)
                                if (B - a2 * b1) % a1 == 0:
                                    cands.append((b1, (B - a2 * b1) // a1))
                for b1, b2 in cands:
                    F1, F2 = Poly([c1s, b1, a1]), Poly([c2, b2, a2])
                    if F1 * F2 == Poly(f):
                        return F1, F2
    return None


def _monic(P: Poly) -> Poly:
    return P / P.lc


def irreducible_factors(P: Poly) -> list[Poly]:
    """Distinct monic irreducible factors over Q of a polynomial of degree <= 4."""
    if P.degree < 1:
        raise ValueError("constant polynomials have no roots")
    if P.degree > MAX_DEGREE:
        raise UnsupportedDegree(f"factoring is only supported up to degree {MAX_DEGREE}")
    work = _monic(squarefree_part(P))
    out: list[Poly] = []
    while work.degree >= 1:
        f = _primitive_ints(work)
        r = _rational_root(f)
        if r is not None:
            lin = Poly([-r, 1])
            out.append(lin)
            work = poly_divmod(work, lin)[0]
            continue
        if work.degree == 4:
            split = _quadratic_split(f)
            if split is not None:
                out.extend(_monic(F) for F in split)
                break
        out.append(work)
        break
    return sorted(out, key=lambda F: (int(F.degree), F.coeffs))


def is_integral(P: Poly) -> bool:
    """Monic with integer coefficients."""
    return P.lc == 1 and all(c.denominator == 1 for c in P.coeffs)


# ----------------------------------------------------------------------------
# algebraic numbers
# ----------------------------------------------------------------------------

ANY_ROOT = "any-root"
Selector = Union[str, tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class AlgebraicNumberSpec:
    """A root of `defining`, either any root or the unique one in (lo, hi]."""

    defining: Poly
    selector: Selector = ANY_ROOT

    def __post_init__(self):
        if self.defining.degree < 1:
            raise ValueError("defining polynomial must be nonconstant")
        if self.defining.degree > MAX_DEGREE:
            raise UnsupportedDegree(f"degree {self.defining.degree} exceeds {MAX_DEGREE}")
        if self.selector != ANY_ROOT:
            lo, hi = (as_rat(x) for x in self.selector)
            object.__setattr__(self, "selector", (lo, hi))
            k = count_real_roots(self.defining, lo, hi)
            if k != 1:
                raise ValueError(f"interval ({lo}, {hi}] holds {k} real roots, expected 1")


def minimal_polynomial(spec: AlgebraicNumberSpec) -> Union[Poly, list[Poly]]:
    """The minimal polynomial of the selected root; for "any-root" every irreducible factor."""
    factors = irreducible_factors(spec.defining)
    if spec.selector == ANY_ROOT:
        return factors
    lo, hi = spec.selector
    for F in factors:
        if count_real_roots(F, lo, hi) == 1:
            return F
    raise AssertionError("isolating interval lost its root")  # unreachable after validation


def is_algebraic_integer(spec: AlgebraicNumberSpec) -> bool:
    """For "any-root": true iff every root is an algebraic integer."""
    m = minimal_polynomial(spec)
    if isinstance(m, list):
        return all(is_integral(F) for F in m)
    return is_integral(m)


def some_root_integral(P: Poly) -> bool:
    return any(is_integral(F) for F in irreducible_factors(P))


# ----------------------------------------------------------------------------
# constraint equations for the coefficient obstructions
# ----------------------------------------------------------------------------

def _need(n: int, lo: int, what: str) -> None:
    if n < lo:
        raise HypothesisError(f"{what} is stated for n >= {lo}, got n = {n}")


def eq_azx(n: int) -> Fraction:
    """Value of (2 delta)^2 = 3/((n-1)(n-2)) for the shift of a degree-n solution."""
    _need(n, 6, "the shift equation (2 delta)^2 = 3/((n-1)(n-2))")
    return Fraction(3, (n - 1) * (n - 2))


def eq_xza(n: int) -> Poly:
    """(2/15)(n-1)(n-2)(n-3)(n-4) t^4 - (n-2)(n-3) t^2 + 1 in t = 2 delta."""
    _need(n, 6, "the quartic shift equation")
    c4 = Fraction(2, 15) * (n - 1) * (n - 2) * (n - 3) * (n - 4)
    return Poly([1, 0, -(n - 2) * (n - 3), 0, c4])


def eq_ur(n: int) -> Poly:
    """(n-1)(n-2)(n-3)(n-4) t^4 - 30 (n-2)(n-3) t^2 + 120 in t = 4 delta."""
    _need(n, 6, "the rescaled quartic shift equation")
    return Poly([120, 0, -30 * (n - 2) * (n - 3), 0, (n - 1) * (n - 2) * (n - 3) * (n - 4)])


def eq_azxx(n: int) -> tuple[Fraction, Fraction]:
    """(4 beta^2, alpha^2) = (6/((n-1)(2n-1)), (2n-4)/(2n-1)) when the third coefficient vanishes."""
    _need(n, 5, "the two-parameter shift equation")
    return Fraction(6, (n - 1) * (2 * n - 1)), Fraction(2 * n - 4, 2 * n - 1)


def eq_azxx_plus(n: int) -> tuple[Fraction, Fraction]:
    """(4 beta^2, alpha^2) = (12/((n-1)(2n-1)), (2n-7)/(2n-1)) when the fourth coefficient vanishes."""
    _need(n, 5, "the two-parameter shift equation")
    return Fraction(12, (n - 1) * (2 * n - 1)), Fraction(2 * n - 7, 2 * n - 1)


def eq_kon(n: int) -> Poly:
    """(n^2-3n+2) t^2 + (-2n^2+12n-16) t + (n^2-9n+20) in t = alpha^2."""
    _need(n, 6, "the scale equation")
    return Poly([n * n - 9 * n + 20, -2 * n * n + 12 * n - 16, n * n - 3 * n + 2])


def kon_roots(n: int) -> tuple[float, float]:
    """The two roots of eq_kon(n), ascending, by the quadratic formula."""
    c, b, a = (float(x) for x in eq_kon(n).coeffs)
    r = math.sqrt(b * b - 4 * a * c)
    lo, hi = (-b - r) / (2 * a), (-b + r) / (2 * a)
    return lo, hi


EQUATIONS = {
    "azx": eq_azx,
    "xza": eq_xza,
    "ur": eq_ur,
    "azxx": eq_azxx,
    "azxx+": eq_azxx_plus,
    "kon": eq_kon,
}


CASE2_CLAIM_FROM = 9


def lal_polynomial(n: int, case: str) -> Poly:
    if case == "case1":
        _need(n, 6, "the quadratic shift obstruction")
        return Poly([-Fraction(12, (n - 1) * (n - 2)), 0, 1])
    if case == "case2":
        # the obstruction is claimed from n = 9 on; smaller n are computed but can fail
        _need(n, 6, "the quartic shift obstruction")
        return eq_ur(n)
    raise ValueError(f"unknown case {case!r}; expected case1 or case2")


def corollary_lal_check(n: int, case: str) -> bool:
    """True iff no root of the case's equation is an algebraic integer.

    case1: t^2 = 12/((n-1)(n-2)) with t = 4 delta; case2: eq_ur(n).
    case2 is asserted only for n >= CASE2_CLAIM_FROM; n = 6 is a genuine exception.
    """
    return not some_root_integral(lal_polynomial(n, case))


def doubled_critical_polynomial(n: int) -> Poly:
    """U_{n-1}(x/2): its roots are 2a for the critical points a of T_n."""
    if n < 2:
        raise ValueError("T_n has critical points only for n >= 2")
    return compose(cheb_U(n - 1), Poly([0, Fraction(1, 2)]))


def doubled_critical_points_integral(n: int) -> bool:
    """Every 2a with T_n'(a) = 0 is an algebraic integer: U_{n-1}(x/2) is monic over Z."""
    return is_integral(doubled_critical_polynomial(n))
