"""The acceptance suite: every criterion as a function returning a JSON-ready record.

Reports are deterministic for a given (seed, scale): wall-clock timings are kept
out of the JSON and returned separately.
"""
from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .abel import center_verdict, numeric_flow_batch, return_map
from .algebraics import (
    AlgebraicNumberSpec,
    corollary_lal_check,
    doubled_critical_polynomial,
    eq_ur,
    is_algebraic_integer,
    is_integral,
    kon_roots,
)
from .chebyshev import cheb_T, cheb_T_explicit, cheb_U
from .momentlab import PowerMomentTable, find_composition_condition, first_nonvanishing
from .poly_core import Endpoints, Poly, compose, derivative, eval_float, eval_poly, rat_sqrt, rat_str
from .verify_suite import (
    SKUN_PAIRS,
    kon_roots_certified,
    verify_l2,
    verify_l4,
    verify_ll3,
    verify_skun,
    verify_tgv,
    verify_xyi,
)

SCALES = ("full", "smoke")
DEFAULT_SEED = 7
Y0 = 1e-2
FLOW_TOL = 1e-10
FLOW_STEPS = 4096


@dataclass(frozen=True)
class ScaleParams:
    pairs: int
    scan_degree: int
    scan_bound: int
    elim_top: int
    kon_top: int
    grid: int


PARAMS = {
    "full": ScaleParams(pairs=500, scan_degree=4, scan_bound=24, elim_top=20, kon_top=40, grid=1000),
    "smoke": ScaleParams(pairs=40, scan_degree=3, scan_bound=12, elim_top=10, kon_top=20, grid=200),
}


# ----------------------------------------------------------------------------
# random composition-condition pairs
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionPair:
    Ptilde: Poly
    Qtilde: Poly
    W: Poly
    e: Endpoints

    @property
    def P(self) -> Poly:
        return compose(self.Ptilde, self.W)

    @property
    def Q(self) -> Poly:
        return compose(self.Qtilde, self.W)


def _rand_rat(rng: random.Random, lo: int = -5, hi: int = 5, max_den: int = 4) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def _rand_poly(rng: random.Random, deg: int) -> Poly:
    c = [_rand_rat(rng) for _ in range(deg)]
    lead = Fraction(0)
    while lead == 0:
        lead = _rand_rat(rng)
    return Poly(c + [lead])


def _other_endpoint(W: Poly, a: Fraction) -> Optional[Fraction]:
    """A rational b != a with W(b) = W(a), from (W(x) - W(a))/(x - a) of degree <= 2."""
    q, r = divmod(W - Poly([eval_poly(W, a)]), Poly([-a, 1]))
    assert r.is_zero()
    if q.degree == 1:
        b = -q.coeff(0) / q.coeff(1)
        return b if b != a else None
    c, bq, A = q.coeff(0), q.coeff(1), q.coeff(2)
    s = rat_sqrt(bq * bq - 4 * A * c)
    if s is None:
        return None
    for b in ((-bq + s) / (2 * A), (-bq - s) / (2 * A)):
        if b != a:
            return b
    return None


def _small_enough(pair: CompositionPair, y0: float) -> bool:
    """The flow from y0 stays well inside its domain: |y0 (P - P(a))| and |y0^2 (Q - Q(a))| <= 1/4."""
    a, b = float(pair.e.a), float(pair.e.b)
    P, Q = pair.P, pair.Q
    Pa, Qa = eval_float(P, a), eval_float(Q, a)
    for k in range(65):
        x = a + (b - a) * k / 64
        if abs(y0 * (eval_float(P, x) - Pa)) > 0.25 or abs(y0 * y0 * (eval_float(Q, x) - Qa)) > 0.25:
            return False
    return True


def random_composition_pairs(seed: int, count: int, y0: float = Y0) -> tuple[list[CompositionPair], int]:
    """`count` pairs (Ptilde o W, Qtilde o W) with W(a) = W(b); returns (pairs, rejected).

    Degrees of Ptilde, Qtilde are 1..3, W is 2..3, coefficients are rationals in [-5, 5].
    For cubic W the endpoints come first and the linear coefficient of W is solved for,
    so that the quadratic (W(x) - W(a))/(x - a) has the rational root b. Endpoints lie in
    [-1, 1]; pairs whose flow from y0 is not in the small-data regime are redrawn.
    """
    rng = random.Random(seed)
    out: list[CompositionPair] = []
    rejected = 0
    while len(out) < count:
        dw = rng.randint(2, 3)
        a = _rand_rat(rng, -1, 1)
        if dw == 2:
            W = _rand_poly(rng, 2)
        else:
            b = _rand_rat(rng, -1, 1)
            if b == a:
                rejected += 1
                continue
            w0, w2, w3 = _rand_rat(rng), _rand_rat(rng), _rand_rat(rng)
            if w3 == 0:
                rejected += 1
                continue
            w1 = -w3 * (a * a + a * b + b * b) - w2 * (a + b)
            if abs(w1) > 5:
                rejected += 1
                continue
            W = Poly([w0, w1, w2, w3])
        b = _other_endpoint(W, a)
        if b is None or abs(b) > 5:
            rejected += 1
            continue
        pair = CompositionPair(_rand_poly(rng, rng.randint(1, 3)), _rand_poly(rng, rng.randint(1, 3)),
                               W, Endpoints(a, b))
        if not _small_enough(pair, y0):
            rejected += 1
            continue
        out.append(pair)
    return out, rejected


# ----------------------------------------------------------------------------
# criteria
# ----------------------------------------------------------------------------

def crit_chebyshev(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    shift = Poly([1]) if corrupt else Poly()
    comp = all(compose(cheb_T(n), cheb_T(m)) == cheb_T(n * m) + shift
               for n in range(1, 13) for m in range(1, 13))
    closed = all(cheb_T(n) == cheb_T_explicit(n) for n in range(0, 21))
    deriv = all(derivative(cheb_T(n)) == cheb_U(n - 1) * n for n in range(1, 21))
    return comp and closed and deriv, {"composition_12x12": comp, "closed_form_n_le_20": closed,
                                       "derivative_n_le_20": deriv}


def _pairs(p: ScaleParams, seed: int):
    return random_composition_pairs(seed, p.pairs)


def crit_moments(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    pairs, rejected = _pairs(p, seed)
    bad = 0
    for pr in pairs:
        e = Endpoints(pr.e.a, pr.e.b + 1) if corrupt else pr.e
        if (first_nonvanishing(pr.P, pr.Q, e, 20) is not None
                or first_nonvanishing(pr.Q, pr.P, e, 20) is not None):
            bad += 1
    return bad == 0, {"pairs": len(pairs), "redrawn": rejected, "bound": 20, "nonvanishing": bad}


def _scan_polys(deg: int) -> list[Poly]:
    out = []
    for cs in itertools.product(range(-2, 3), repeat=deg + 1):
        P = Poly(cs)
        if P.degree >= 1:
            out.append(P)
    return out


def crit_scan(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    e = Endpoints(-1, 1)
    witness_e = Endpoints(0, 1) if corrupt else e
    N = p.scan_bound
    polys = _scan_polys(p.scan_degree)
    # the order-0 moments are Q(b) - Q(a) and P(b) - P(a)
    balanced = [P for P in polys if eval_poly(P, e.a) == eval_poly(P, e.b)]
    tables = {P: PowerMomentTable(P, e, N, p.scan_degree) for P in balanced}
    both = 0
    exceptions = []
    for P in balanced:
        tp = tables[P]
        for Q in balanced:
            if any(tp.pair(Q, i) for i in range(1, N + 1)):
                continue
            tq = tables[Q]
            if any(tq.pair(P, i) for i in range(1, N + 1)):
                continue
            both += 1
            if find_composition_condition(P, Q, witness_e) is None:
                exceptions.append([[rat_str(c) for c in P.coeffs], [rat_str(c) for c in Q.coeffs]])
    detail = {"polynomials": len(polys), "pairs": len(polys) ** 2,
              "pairs_with_zero_order_moments": len(balanced) ** 2,
              "pairs_with_all_moments_zero": both, "bound": N,
              "exceptions": len(exceptions), "first_exceptions": exceptions[:5]}
    return not exceptions, detail


def crit_center(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    pairs, _ = _pairs(p, seed)
    not_center = 0
    ps, qs, es, epss, preds = [], [], [], [], []
    for pr in pairs:
        pp, qq = derivative(pr.P), derivative(pr.Q)
        rm = return_map(pp, qq, pr.e, 8)
        if not center_verdict(rm).is_parametric_center:
            not_center += 1
        for eps in (-1.0, 0.0, 1.0):
            ps.append(pp)
            qs.append(qq)
            es.append(pr.e)
            epss.append(eps)
            preds.append(rm.evaluate(Y0, eps))
    flows = numeric_flow_batch(ps, qs, es, epss, [Y0] * len(ps), FLOW_STEPS)
    worst = max((abs(f - s) for f, s in zip(flows, preds)), default=0.0)
    neg = center_verdict(return_map(Poly([0, 2]), Poly([0, 0, 3]), Endpoints(-1, 1), 8)).first_obstruction
    want = (3, 1, Fraction(3 if corrupt else 2))
    ok = not_center == 0 and worst < FLOW_TOL and neg == want
    return ok, {"pairs": len(pairs), "order": 8, "not_parametric_center": not_center,
                "flow_agrees": bool(worst < FLOW_TOL), "flow_tolerance": FLOW_TOL,
                "negative_control": None if neg is None else [neg[0], neg[1], rat_str(neg[2])]}


def crit_six_term(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    r = verify_tgv(perturb=corrupt)
    sol = r.data.get("solution")
    return r.passed, {"solution": None if sol is None else {k: rat_str(v) for k, v in sol.items()},
                      "detail": r.detail}


def crit_shift_quartic(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    target = Poly([1, 0, -3, 0, -1 if corrupt else 1])
    reduced = eq_ur(6) / 120
    red_ok = reduced == target
    integral = is_algebraic_integer(AlgebraicNumberSpec(eq_ur(6)))
    case1 = [n for n in range(6, 41) if not corollary_lal_check(n, "case1")]
    case2 = [n for n in range(9, 41) if not corollary_lal_check(n, "case2")]
    ok = red_ok and integral and not case1 and not case2
    return ok, {"reduces_to_t4_minus_3t2_plus_1": red_ok, "roots_integral": integral,
                "case1_failures": case1, "case2_failures": case2}


def crit_elimination(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    failures = []
    top = p.elim_top
    for n in range(6, top + 1):
        for case in ("azx", "xza"):
            if not verify_l2(n, case).passed:
                failures.append(["shift", n, case])
    for n in range(5, top + 1):
        for case in ("c3", "c4"):
            if not verify_l4(n, case).passed:
                failures.append(["affine", n, case])
    for n in range(6, top + 1):
        for case in ("c2", "c4", "c6"):
            if not verify_ll3(n, case).passed:
                failures.append(["scale", n, case])
    for n in range(6, p.kon_top + 1):
        ok, _ = kon_roots_certified(n)
        if corrupt:
            ok = ok and max(kon_roots(n)) < 0.5
        if not ok:
            failures.append(["roots", n])
    return not failures, {"top": top, "roots_top": p.kon_top, "failures": failures[:10]}


def crit_endpoint_geometry(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    import abelcenter.verify_suite as vs
    old = vs.TOL
    if corrupt:
        vs.TOL = 1e-30
    try:
        rows = []
        ok = True
        for m1, m2 in SKUN_PAIRS:
            r = verify_skun(m1, m2, p.grid)
            ok &= r.passed
            row = {"m1": m1, "m2": m2, "passed": r.passed}
            if math.gcd(m1, m2) == 1:
                rx = verify_xyi(m1, m2, p.grid)
                ok &= rx.passed
                row["coprime_passed"] = rx.passed
            rows.append(row)
    finally:
        vs.TOL = old
    return ok, {"grid": p.grid, "tolerance": old, "pairs": rows}


def crit_critical_points(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    bad = []
    for n in range(2, 11):
        R = doubled_critical_polynomial(n)
        if corrupt:
            R = R * 2 ** (n - 1)
        if not is_integral(R):
            bad.append(n)
    return not bad, {"n_max": 10, "failures": bad}


def crit_determinism(p: ScaleParams, seed: int, corrupt: bool) -> tuple[bool, dict]:
    """Two in-process runs of the seeded criteria serialize to the same bytes."""
    other = seed + 1 if corrupt else seed
    first = json.dumps([crit_moments(p, seed, False), crit_center(p, seed, False)], sort_keys=True)
    second = json.dumps([crit_moments(p, other, False), crit_center(p, other, False)], sort_keys=True)
    pairs_a = [(pr.P, pr.Q, pr.e) for pr in _pairs(p, seed)[0]]
    pairs_b = [(pr.P, pr.Q, pr.e) for pr in _pairs(p, other)[0]]
    same = first == second and pairs_a == pairs_b
    return same, {"identical": same}


@dataclass(frozen=True)
class Criterion:
    cid: int
    name: str
    run: Callable[[ScaleParams, int, bool], tuple[bool, dict]]
    time_bound: Optional[float]


CRITERIA = [
    Criterion(1, "chebyshev algebra", crit_chebyshev, 5),
    Criterion(2, "moment sufficiency", crit_moments, 30),
    Criterion(3, "desk-scale converse scan", crit_scan, 300),
    Criterion(4, "parametric center", crit_center, None),
    Criterion(5, "six-coefficient system", crit_six_term, 1),
    Criterion(6, "quartic shift equation at n = 6", crit_shift_quartic, 10),
    Criterion(7, "coefficient eliminations", crit_elimination, 60),
    Criterion(8, "endpoint geometry oracle", crit_endpoint_geometry, 30),
    Criterion(9, "doubled critical points", crit_critical_points, 5),
    Criterion(10, "determinism", crit_determinism, None),
]


def run_criterion(c: Criterion, seed: int, scale: str, corrupt: bool = False) -> tuple[dict, float]:
    p = PARAMS[scale]
    t0 = time.perf_counter()
    passed, detail = c.run(p, seed, corrupt)
    elapsed = time.perf_counter() - t0
    in_time = c.time_bound is None or elapsed < c.time_bound
    record = {"id": c.cid, "name": c.name, "passed": bool(passed and in_time),
              "within_time_bound": in_time, "time_bound_s": c.time_bound, "detail": detail}
    return record, elapsed


def run_acceptance(seed: int = DEFAULT_SEED, scale: str = "full",
                   corrupt: Optional[int] = None, only: Optional[list[int]] = None,
                   on_result: Optional[Callable[[dict, float], None]] = None) -> tuple[dict, dict]:
    """Run the criteria; returns (report, timings). The report is byte-stable per (seed, scale)."""
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    records, timings = [], {}
    for c in CRITERIA:
        if only and c.cid not in only:
            continue
        rec, dt = run_criterion(c, seed, scale, corrupt == c.cid)
        records.append(rec)
        timings[c.cid] = dt
        if on_result:
            on_result(rec, dt)
    report = {"seed": seed, "scale": scale, "corrupted": corrupt,
              "all_passed": all(r["passed"] for r in records), "criteria": records}
    return report, timings
