"""Polynomial moments, composition certificates, and the real solution types.

The moment of order i is  m_i = int_a^b P(x)^i Q'(x) dx  (direction "PdQ"),
or the same with P and Q exchanged ("QdP").
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional

from .chebyshev import ChebSeries, cheb_T, endpoint_relation, to_cheb
from .decompose import (
    _basis_expansion,
    _right_factor,
    common_witness,
    detect_cheb_conjugate,
    detect_shift_even,
    divisors,
)
from .poly_core import (
    Endpoints,
    LinearMap,
    Poly,
    compose,
    derivative,
    eval_poly,
    int_poly_mul,
    rat_str,
)


# ----------------------------------------------------------------------------
# exact integration with a shared denominator
# ----------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _weights(a: Fraction, b: Fraction, top: int) -> tuple[tuple[int, ...], int]:
    """Integers s_m and D with (b^(m+1) - a^(m+1))/(m+1) = s_m/D for m <= top."""
    da, db = a.denominator, b.denominator
    L = math.lcm(*range(1, top + 2))
    D = L * (da * db) ** (top + 1)
    s = []
    an, bn = a.numerator, b.numerator
    apow, bpow = an, bn  # a_num^(m+1), b_num^(m+1)
    for m in range(top + 1):
        # b^(m+1) = bn^(m+1)/db^(m+1), scaled to D/(m+1)
        scale = (L // (m + 1))
        s.append(scale * (bpow * da ** (m + 1) * db ** (top - m) * da ** (top - m)
                          - apow * db ** (m + 1) * da ** (top - m) * db ** (top - m)))
        apow *= an
        bpow *= bn
    return tuple(s), D


def _integrate_ints(num, den: int, e: Endpoints) -> Fraction:
    if not num:
        return Fraction(0)
    top = len(num) - 1
    # round the table size up so nearby degrees share one cache entry
    s, D = _weights(e.a, e.b, max(16, 1 << (top.bit_length())))
    return Fraction(sum(c * w for c, w in zip(num, s)), D * den)


def integrate(P: Poly, e: Endpoints) -> Fraction:
    num, den = P.int_parts
    return _integrate_ints(num, den, e)


def moment(P: Poly, Q: Poly, e: Endpoints, i: int) -> Fraction:
    """int_a^b P^i dQ, exactly."""
    if i < 0:
        raise ValueError("moment order must be >= 0")
    return integrate(P ** i * derivative(Q), e)


def _moment_stream(P: Poly, Q: Poly, e: Endpoints, N: int):
    dq_num, dq_den = derivative(Q).int_parts
    if not dq_num:
        for i in range(N + 1):
            yield i, Fraction(0)
        return
    p_num, p_den = P.int_parts
    if not p_num:
        # 0^0 = 1; every higher power vanishes
        yield 0, _integrate_ints(dq_num, dq_den, e)
        for i in range(1, N + 1):
            yield i, Fraction(0)
        return
    pw, pw_den = [1], 1
    for i in range(N + 1):
        g = int_poly_mul(pw, dq_num)
        yield i, _integrate_ints(g, pw_den * dq_den, e)
        pw = int_poly_mul(pw, p_num)
        pw_den *= p_den


class Direction(str, enum.Enum):
    PdQ = "PdQ"
    QdP = "QdP"


@dataclass(frozen=True)
class MomentReport:
    direction: Direction
    values: tuple[tuple[int, Fraction], ...]
    bound: int

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for _, v in self.values)

    def first_nonzero(self) -> Optional[int]:
        return next((i for i, v in self.values if v != 0), None)

    def to_json(self) -> dict:
        return {
            "direction": self.direction.value,
            "bound": self.bound,
            "all_zero": self.all_zero,
            "values": [[i, rat_str(v)] for i, v in self.values],
        }


def default_bound(P: Poly, Q: Poly) -> int:
    p, q = max(int(P.degree), 0), max(int(Q.degree), 0)
    return p * q + p + q


def moment_report(P: Poly, Q: Poly, e: Endpoints, N: int,
                  direction: Direction = Direction.PdQ) -> MomentReport:
    if N < 0:
        raise ValueError("moment bound must be >= 0")
    A, B = (P, Q) if direction == Direction.PdQ else (Q, P)
    return MomentReport(direction, tuple(_moment_stream(A, B, e, N)), N)


def mixed_moments(P: Poly, Q: Poly, e: Endpoints, N: int) -> tuple[MomentReport, MomentReport]:
    return (moment_report(P, Q, e, N, Direction.PdQ),
            moment_report(P, Q, e, N, Direction.QdP))


def first_nonvanishing(P: Poly, Q: Poly, e: Endpoints, N: int) -> Optional[int]:
    """Smallest i <= N with int P^i dQ != 0, or None; stops at the first hit."""
    for i, v in _moment_stream(P, Q, e, N):
        if v != 0:
            return i
    return None


class PowerMomentTable:
    """Cached integrals int_a^b P^i x^k for i <= N, k <= kmax.

    Pairing with any Q of degree <= kmax + 1 then costs a short dot product,
    which is what exhaustive scans over many Q need.
    """

    def __init__(self, P: Poly, e: Endpoints, N: int, kmax: int):
        self.P, self.e, self.N, self.kmax = P, e, N, kmax
        self._rows: list[tuple[Fraction, ...]] = []
        self._pw, self._den = [1], 1

    def row(self, i: int) -> tuple[Fraction, ...]:
        p_num, p_den = self.P.int_parts
        while len(self._rows) <= i:
            if not p_num and self._rows:
                # P = 0: every positive power is zero
                self._rows.append((Fraction(0),) * (self.kmax + 1))
                continue
            self._rows.append(tuple(
                _integrate_ints([0] * k + list(self._pw), self._den, self.e)
                for k in range(self.kmax + 1)))
            if p_num:
                self._pw = int_poly_mul(self._pw, p_num)
                self._den *= p_den
        return self._rows[i]

    def pair(self, Q: Poly, i: int) -> Fraction:
        """int P^i dQ."""
        dq = derivative(Q).coeffs
        if len(dq) > self.kmax + 1:
            raise ValueError("Q exceeds the table degree")
        r = self.row(i)
        return sum((c * r[k] for k, c in enumerate(dq) if c), Fraction(0))


# ----------------------------------------------------------------------------
# composition certificates
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionWitness:
    W: Poly
    Ptilde: Poly
    Qtilde: Poly
    e: Endpoints

    def check(self, P: Poly, Q: Poly) -> bool:
        return (compose(self.Ptilde, self.W) == P
                and compose(self.Qtilde, self.W) == Q
                and self.W.degree >= 2
                and eval_poly(self.W, self.e.a) == eval_poly(self.W, self.e.b))

    def to_json(self) -> dict:
        from .poly_core import poly_to_json
        return {
            "W": poly_to_json(self.W),
            "Ptilde": poly_to_json(self.Ptilde),
            "Qtilde": poly_to_json(self.Qtilde),
            "a": rat_str(self.e.a),
            "b": rat_str(self.e.b),
        }


def find_composition_condition(P: Poly, Q: Poly, e: Endpoints) -> Optional[CompositionWitness]:
    """First common right factor W (highest degree first) with W(a) = W(b)."""
    if P.degree < 1 or Q.degree < 1:
        raise ValueError("composition condition needs nonconstant P and Q")
    for W, Pt, Qt in common_witness(P, Q):
        if eval_poly(W, e.a) == eval_poly(W, e.b):
            return CompositionWitness(W, Pt, Qt, e)
    return None


# ----------------------------------------------------------------------------
# classification of moment solutions over Q
# ----------------------------------------------------------------------------

class SolutionKind(str, enum.Enum):
    Reducible = "Reducible"
    Type1 = "Type1"
    Type2 = "Type2"
    Type3 = "Type3"
    Unclassified = "Unclassified"


@dataclass(frozen=True)
class MomentSolutionClass:
    """A classification verdict.

    For the three types, ``data`` holds the shape parameters together with
    the pieces ``W`` and ``V`` (lists) such that Q = sum V[j] o W[j] and
    P = P_j o W[j]; :meth:`check` rebuilds everything from the shape
    parameters and compares.
    """

    kind: SolutionKind
    data: dict = field(default_factory=dict)
    note: str = ""

    def rebuild_P(self) -> Optional[Poly]:
        d = self.data
        if self.kind == SolutionKind.Reducible:
            return compose(d["Ptilde"], d["W"])
        if self.kind == SolutionKind.Type1:
            S = _odd_from_R(d["R"])
            return compose(compose(d["U"], S * S), Poly([-d["delta"], 1]))
        if self.kind == SolutionKind.Type2:
            return compose(compose(d["U"], cheb_T(d["m1"] * d["m2"])), d["mu"].as_poly())
        if self.kind == SolutionKind.Type3:
            S = _odd_from_R(d["R"])
            inner = compose(cheb_T(d["m1"] * d["m2"]), d["mu"].as_poly())
            return compose(compose(d["U"], S * S), inner)
        return None

    def rebuild_W(self) -> list[Poly]:
        d = self.data
        if self.kind == SolutionKind.Reducible:
            return [d["W"]]
        if self.kind == SolutionKind.Type1:
            shift = Poly([-d["delta"], 1])
            return [compose(Poly([0, 0, 1]), shift), compose(_odd_from_R(d["R"]), shift)]
        if self.kind == SolutionKind.Type2:
            mu = d["mu"].as_poly()
            return [compose(cheb_T(d["m1"]), mu), compose(cheb_T(d["m2"]), mu)]
        if self.kind == SolutionKind.Type3:
            mu = d["mu"].as_poly()
            m1, m2 = d["m1"], d["m2"]
            return [compose(cheb_T(2 * m1), mu), compose(cheb_T(2 * m2), mu),
                    compose(compose(_odd_from_R(d["R"]), cheb_T(m1 * m2)), mu)]
        return []

    def check(self, P: Poly, Q: Poly, e: Endpoints) -> bool:
        """Recompose the stored parameters and confirm every defining identity."""
        if self.kind == SolutionKind.Unclassified:
            return True
        if self.rebuild_P() != P:
            return False
        Ws = self.rebuild_W()
        if any(eval_poly(W, e.a) != eval_poly(W, e.b) for W in Ws):
            return False
        if self.kind == SolutionKind.Reducible:
            return compose(self.data["Qtilde"], Ws[0]) == Q
        if Ws != self.data["W"]:
            return False
        total = Poly()
        for V, W in zip(self.data["V"], Ws):
            total = total + compose(V, W)
        if total != Q:
            return False
        # P must factor through every W_j
        return all(_basis_expansion(P, _norm(W)) is not None for W in Ws)

    def to_json(self) -> dict:
        from .poly_core import poly_to_json

        def enc(v: Any):
            if isinstance(v, Poly):
                return poly_to_json(v)
            if isinstance(v, Fraction):
                return rat_str(v)
            if isinstance(v, LinearMap):
                return {"alpha": rat_str(v.alpha), "beta": rat_str(v.beta)}
            if isinstance(v, list):
                return [enc(x) for x in v]
            return v

        return {"kind": self.kind.value, "data": {k: enc(v) for k, v in self.data.items()},
                "note": self.note}


def _norm(W: Poly) -> Poly:
    return (W - W.coeff(0)) / W.lc


def _odd_from_R(R: Poly) -> Poly:
    """x R(x^2)."""
    out = [Fraction(0)] * (2 * len(R))
    for k, c in enumerate(R.coeffs):
        out[2 * k + 1] = c
    return Poly(out)


def _R_from_odd(S: Poly) -> Poly:
    return Poly([S.coeff(2 * k + 1) for k in range(len(S) // 2)])


def _is_odd(S: Poly) -> bool:
    return all(S.coeff(k) == 0 for k in range(0, len(S), 2))


def _even_to_outer(E: Poly) -> Poly:
    """V with E = V o x^2, for even E."""
    return Poly([E.coeff(2 * k) for k in range((len(E) + 1) // 2)])


def poly_sqrt(H: Poly) -> Optional[Poly]:
    """Monic S with S*S == H, when H is monic and a perfect square."""
    if H.is_zero() or int(H.degree) % 2 or H.lc != 1:
        return None
    s = int(H.degree) // 2
    c = [Fraction(0)] * (s + 1)
    c[s] = Fraction(1)
    for i in range(1, s + 1):
        cur = Poly(c) * Poly(c)
        c[s - i] = (H.coeff(2 * s - i) - cur.coeff(2 * s - i)) / 2
    S = Poly(c)
    return S if S * S == H else None


def detect_type1(P: Poly, Q: Poly, e: Endpoints) -> Optional[MomentSolutionClass]:
    """P = U o x^2 R(x^2)^2 o (x - delta), Q = V1 o W1 + V2 o W2."""
    if P.degree < 2:
        return None
    delta = detect_shift_even(P)
    if delta is None or e.a + e.b != 2 * delta:
        return None
    shift, back = Poly([delta, 1]), Poly([-delta, 1])
    Ps, Qs = compose(P, shift), compose(Q, shift)
    E = Poly([Qs.coeff(k) if k % 2 == 0 else 0 for k in range(len(Qs))])
    O = Qs - E
    if O.is_zero():
        return None
    for s in sorted(divisors(int(O.degree)), reverse=True):
        pair = _right_factor(O, s)
        if pair is None or not _is_odd(pair.inner):
            continue
        S = pair.inner
        if eval_poly(S, e.a - delta) != eval_poly(S, e.b - delta):
            continue
        U = _basis_expansion(Ps, S * S)
        if U is None:
            continue
        W1, W2 = compose(Poly([0, 0, 1]), back), compose(S, back)
        data = {
            "delta": delta, "R": _R_from_odd(S), "U": U,
            "W": [W1, W2], "V": [_even_to_outer(E), pair.outer],
        }
        return MomentSolutionClass(SolutionKind.Type1, data)
    return None


def _coprime_splits(N: int, odd: bool = False):
    for m1 in divisors(N):
        m2 = N // m1
        if 2 <= m1 < m2 and math.gcd(m1, m2) == 1 and (not odd or (m1 % 2 and m2 % 2)):
            yield m1, m2


def split_type2(Q: Poly, m1: int, m2: int, mu: LinearMap) -> Optional[tuple[Poly, Poly]]:
    """V1, V2 with Q = V1 o T_m1 o mu + V2 o T_m2 o mu, via the Chebyshev support of Q o mu^-1."""
    S = to_cheb(compose(Q, mu.inverse().as_poly()))
    v1: dict[int, Fraction] = {}
    v2: dict[int, Fraction] = {}
    for i, c in enumerate(S.d):
        if not c:
            continue
        if i % m1 == 0:
            v1[i // m1] = c
        elif i % m2 == 0:
            v2[i // m2] = c
        else:
            return None
    V1 = sum((cheb_T(k) * c for k, c in v1.items()), Poly())
    V2 = sum((cheb_T(k) * c for k, c in v2.items()), Poly())
    return V1, V2


def split_type3(Q: Poly, m1: int, m2: int, S: Poly, mu: LinearMap
                ) -> Optional[tuple[Poly, Poly, Poly]]:
    """V1, V2, V3 with Q o mu^-1 = V1 o T_2m1 + V2 o T_2m2 + V3 o S o T_m1m2."""
    N = m1 * m2
    series = to_cheb(compose(Q, mu.inverse().as_poly()))
    odd_part: dict[int, Fraction] = {}
    rest: list[Fraction] = []
    for i, c in enumerate(series.d):
        if c and i % N == 0 and (i // N) % 2 == 1:
            odd_part[i // N] = c
            rest.append(Fraction(0))
        else:
            rest.append(c)
    G = sum((cheb_T(j) * c for j, c in odd_part.items()), Poly())
    V3 = _basis_expansion(G, S) if not G.is_zero() else Poly()
    if V3 is None:
        return None
    split = split_type2(from_series(rest), 2 * m1, 2 * m2, LinearMap.identity())
    if split is None:
        return None
    return split[0], split[1], V3


def from_series(d) -> Poly:
    from .chebyshev import from_cheb
    return from_cheb(ChebSeries(tuple(d)))


def _endpoint_images(mu: LinearMap, e: Endpoints) -> Endpoints:
    return Endpoints(mu(e.a), mu(e.b))


def detect_type2(P: Poly, Q: Poly, e: Endpoints) -> tuple[Optional[MomentSolutionClass], str]:
    """Type-2 shape P = U o T_m1m2 o mu with the two endpoint relations.

    Returns (class or None, obstruction note).
    """
    notes = []
    n = int(P.degree)
    for N in sorted(divisors(n), reverse=True):
        splits = list(_coprime_splits(N))
        if not splits:
            continue
        conj = detect_cheb_conjugate(P, N)
        if conj is None:
            continue
        img = _endpoint_images(conj.mu, e)
        for m1, m2 in splits:
            if not (endpoint_relation(m1, img) and endpoint_relation(m2, img)):
                notes.append(
                    f"P = U o T_{N} o ({rat_str(conj.mu.alpha)}x + {rat_str(conj.mu.beta)}) "
                    f"but T_{m1}, T_{m2} do not agree at the rational images "
                    f"{rat_str(img.a)}, {rat_str(img.b)}; such endpoints must be roots of "
                    f"T'_{N} and are irrational here")
                continue
            split = split_type2(Q, m1, m2, conj.mu)
            if split is None:
                notes.append(f"Q has Chebyshev support outside multiples of {m1}, {m2}")
                continue
            mu = conj.mu.as_poly()
            data = {"m1": m1, "m2": m2, "U": conj.outer, "mu": conj.mu,
                    "W": [compose(cheb_T(m1), mu), compose(cheb_T(m2), mu)],
                    "V": list(split)}
            return MomentSolutionClass(SolutionKind.Type2, data), ""
    return None, "; ".join(notes)


def detect_type3(P: Poly, Q: Poly, e: Endpoints) -> tuple[Optional[MomentSolutionClass], str]:
    notes = []
    n = int(P.degree)
    for N in sorted(divisors(n), reverse=True):
        splits = list(_coprime_splits(N, odd=True))
        if not splits or (n // N) % 2:
            continue
        conj = detect_cheb_conjugate(P, N)
        if conj is None:
            continue
        Uprime = conj.outer
        img = _endpoint_images(conj.mu, e)
        for two_s in sorted((d for d in divisors(int(Uprime.degree)) if d % 2 == 0), reverse=True):
            pair = _right_factor(Uprime, two_s)
            if pair is None:
                continue
            S = poly_sqrt(pair.inner)
            if S is None or not _is_odd(S):
                continue
            for m1, m2 in splits:
                W3 = compose(S, cheb_T(N))
                if not (endpoint_relation(2 * m1, img) and endpoint_relation(2 * m2, img)
                        and eval_poly(W3, img.a) == eval_poly(W3, img.b)):
                    notes.append(
                        f"type-3 shape with m1={m1}, m2={m2} found but the endpoint relations "
                        f"fail at the rational images {rat_str(img.a)}, {rat_str(img.b)}")
                    continue
                split = split_type3(Q, m1, m2, S, conj.mu)
                if split is None:
                    continue
                mu = conj.mu.as_poly()
                data = {"m1": m1, "m2": m2, "R": _R_from_odd(S), "U": pair.outer,
                        "mu": conj.mu,
                        "W": [compose(cheb_T(2 * m1), mu), compose(cheb_T(2 * m2), mu),
                              compose(W3, mu)],
                        "V": list(split)}
                return MomentSolutionClass(SolutionKind.Type3, data), ""
    return None, "; ".join(notes)


def classify(P: Poly, Q: Poly, e: Endpoints, N: Optional[int] = None) -> MomentSolutionClass:
    """Place a solution of the moment problem among the real solution types.

    Tries reducible, then types 1, 2, 3. Nothing is returned unless its
    parameters rebuild P and Q exactly.
    """
    if P.degree < 1 or Q.degree < 1:
        raise ValueError("classification needs nonconstant P and Q")
    N = default_bound(P, Q) if N is None else N
    bad = first_nonvanishing(P, Q, e, N)
    if bad is not None:
        return MomentSolutionClass(SolutionKind.Unclassified,
                                   note=f"moment of order {bad} is nonzero (bound {N})")
    w = find_composition_condition(P, Q, e)
    if w is not None:
        return MomentSolutionClass(SolutionKind.Reducible,
                                   {"W": w.W, "Ptilde": w.Ptilde, "Qtilde": w.Qtilde})
    found = detect_type1(P, Q, e)
    if found is not None:
        return found
    found, note2 = detect_type2(P, Q, e)
    if found is not None:
        return found
    found, note3 = detect_type3(P, Q, e)
    if found is not None:
        return found
    note = "; ".join(x for x in (note2, note3) if x) or "no type detected over Q"
    return MomentSolutionClass(SolutionKind.Unclassified, note=note)
