"""Return map of  y' = p(x) y^2 + eps q(x) y^3  on [a, b] as a series in y(a) = c and eps.

Writing y(x) = sum_k u_k(x; eps) c^k with u_1 = 1 and u_k(a) = 0 for k >= 2,

    u_k' = p * sum_{i+j=k} u_i u_j + eps q * sum_{i+j+l=k} u_i u_j u_l,

so every u_k is a polynomial in x and eps, computed exactly by antiderivatives.
The stored coefficients are w_{k,j} = [eps^j] u_k(b).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .poly_core import Endpoints, Poly, antiderivative, eval_poly, rat_str

DEFAULT_ORDER = 8
DEFAULT_STEPS = 4096

# a polynomial in (x, eps): list indexed by the eps power
Bivar = list


def _bmul(A: Bivar, B: Bivar) -> Bivar:
    out = [Poly() for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def _badd(A: Bivar, B: Bivar) -> Bivar:
    n = max(len(A), len(B))
    return [(A[i] if i < len(A) else Poly()) + (B[i] if i < len(B) else Poly()) for i in range(n)]


def series_terms(p: Poly, q: Poly, e: Endpoints, K: int) -> list[Bivar]:
    """u_1 .. u_K as bivariate polynomials; index 0 of the result is u_1."""
    if K < 1:
        raise ValueError("order must be >= 1")
    u: list[Bivar] = [[Poly.const(1)]]
    sq: list[Bivar] = [[]]  # sq[k-1] = sum_{i+j=k} u_i u_j
    for k in range(2, K + 1):
        s2: Bivar = []
        for i in range(1, k // 2 + 1):
            prod = _bmul(u[i - 1], u[k - i - 1])
            if i != k - i:
                prod = _badd(prod, prod)
            s2 = _badd(s2, prod)
        sq.append(s2)
        s3: Bivar = []
        for i in range(1, k - 1):
            s3 = _badd(s3, _bmul(u[i - 1], sq[k - i - 1]))
        rhs = [p * c for c in s2]
        rhs = _badd(rhs, [Poly()] + [q * c for c in s3])
        uk = []
        for c in rhs:
            F = antiderivative(c)
            uk.append(F - eval_poly(F, e.a))
        while uk and uk[-1].is_zero():
            uk.pop()
        u.append(uk)
    return u


@dataclass(frozen=True)
class ReturnMap:
    """y(b) = sum w_{k,j} c^k eps^j, truncated at c-order K."""

    K: int
    coeffs: dict
    e: Endpoints
    p: Poly
    q: Poly

    def w(self, k: int, j: int) -> Fraction:
        return self.coeffs.get((k, j), Fraction(0))

    def w_poly(self, k: int) -> list[Fraction]:
        """The eps-polynomial w_k(eps), ascending."""
        js = [j for (kk, j) in self.coeffs if kk == k]
        return [self.w(k, j) for j in range(max(js) + 1)] if js else []

    def evaluate(self, c: float, eps: float) -> float:
        return sum(float(v) * c ** k * eps ** j for (k, j), v in self.coeffs.items())

    def to_json(self) -> dict:
        return {
            "order": self.K,
            "note": f"up to order {self.K}",
            "w": [[k, j, rat_str(v)] for (k, j), v in sorted(self.coeffs.items())],
        }


def return_map(p: Poly, q: Poly, e: Endpoints, K: int = DEFAULT_ORDER) -> ReturnMap:
    if K < 2:
        raise ValueError("return map order K must be >= 2")
    u = series_terms(p, q, e, K)
    coeffs: dict = {(1, 0): Fraction(1)}
    for k in range(2, K + 1):
        # the eps^j term of u_k needs c-order 2j + 1 at least
        for j in range((k - 1) // 2 + 1):
            c = u[k - 1][j] if j < len(u[k - 1]) else Poly()
            coeffs[(k, j)] = eval_poly(c, e.b)
    return ReturnMap(K, coeffs, e, p, q)


@dataclass(frozen=True)
class CenterVerdict:
    is_center_at: dict
    is_parametric_center: bool
    first_obstruction: Optional[tuple[int, int, Fraction]]
    order: int = DEFAULT_ORDER

    def to_json(self) -> dict:
        ob = self.first_obstruction
        return {
            "order": self.order,
            "note": f"up to order {self.order}",
            "is_center_at": [[rat_str(k), v] for k, v in self.is_center_at.items()],
            "is_parametric_center": self.is_parametric_center,
            "first_obstruction": None if ob is None else [ob[0], ob[1], rat_str(ob[2])],
        }


def center_verdict(rm: ReturnMap, eps_samples: Iterable = ()) -> CenterVerdict:
    nonzero = sorted((k, j) for (k, j), v in rm.coeffs.items() if k >= 2 and v != 0)
    first = (nonzero[0][0], nonzero[0][1], rm.w(*nonzero[0])) if nonzero else None
    per_eps = {}
    for eps in eps_samples:
        eps = Fraction(eps)
        per_eps[eps] = all(
            sum((c * eps ** j for j, c in enumerate(rm.w_poly(k))), Fraction(0)) == 0
            for k in range(2, rm.K + 1))
    return CenterVerdict(per_eps, first is None, first, rm.K)


def epsilon_linear_obstructions(rm: ReturnMap) -> list[Fraction]:
    """w_{k,1} for k = 3..K (the eps-linear column first appears at c-order 3)."""
    return [rm.w(k, 1) for k in range(3, rm.K + 1)]


# ----------------------------------------------------------------------------
# floating oracle
# ----------------------------------------------------------------------------

class SmallnessViolation(ArithmeticError):
    """The trajectory left every bounded region: y(a) was not small enough."""


def numeric_flow_batch(ps: Sequence[Poly], qs: Sequence[Poly], es: Sequence[Endpoints],
                       eps: Sequence[float], y0: Sequence[float],
                       steps: int = DEFAULT_STEPS) -> np.ndarray:
    """RK4 for many independent problems at once; nonfinite rows raise SmallnessViolation."""
    if steps < 100:
        raise ValueError("RK4 needs at least 100 steps")
    pc = _kernels.pad_coeffs([[float(c) for c in p.coeffs] for p in ps])
    qc = _kernels.pad_coeffs([[float(c) for c in q.coeffs] for q in qs])
    a = np.array([float(e.a) for e in es])
    b = np.array([float(e.b) for e in es])
    out = _kernels.rk4_flow(pc, qc, a, b, np.asarray(eps, float), np.asarray(y0, float), steps)
    bad = np.flatnonzero(~np.isfinite(out))
    if bad.size:
        raise SmallnessViolation(
            f"nonfinite value on {bad.size} trajectories (first index {bad[0]}); "
            "the initial value is too large for this equation")
    return out


def numeric_flow(p: Poly, q: Poly, e: Endpoints, eps: float, y0: float,
                 steps: int = DEFAULT_STEPS) -> float:
    """y(b) by fixed-step RK4 from y(a) = y0."""
    if not math.isfinite(y0) or not math.isfinite(eps):
        raise ValueError("y0 and eps must be finite")
    return float(numeric_flow_batch([p], [q], [e], [eps], [y0], steps)[0])
