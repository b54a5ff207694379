"""Every acceptance criterion at full scale and its stated tolerance, one line each."""
from __future__ import annotations

import subprocess
import sys
import time

import pytest

from abelcenter.acceptance import CRITERIA, DEFAULT_SEED, random_composition_pairs, run_criterion
from abelcenter.poly_core import eval_poly

BY_ID = {c.cid: c for c in CRITERIA}


def _report(capsys, cid: int, passed: bool, dt: float, bound) -> None:
    limit = f" (bound {bound} s)" if bound is not None else ""
    with capsys.disabled():
        print(f"\ncriterion {cid:>2} {BY_ID[cid].name}: {'PASS' if passed else 'FAIL'} in {dt:.2f} s{limit}")


@pytest.mark.slow
@pytest.mark.parametrize("cid", range(1, 10))
def test_criterion(cid, capsys):
    c = BY_ID[cid]
    rec, dt = run_criterion(c, DEFAULT_SEED, "full")
    _report(capsys, cid, rec["passed"], dt, c.time_bound)
    assert rec["within_time_bound"], f"took {dt:.1f} s, bound {c.time_bound} s"
    assert rec["passed"], rec["detail"]


@pytest.mark.slow
def test_criterion_10_cli_determinism(capsys):
    cmd = [sys.executable, "-m", "abelcenter", "accept", "--seed", "7"]
    t0 = time.perf_counter()
    runs = [subprocess.run(cmd, capture_output=True, timeout=900) for _ in range(2)]
    ok = all(r.returncode == 0 for r in runs) and runs[0].stdout == runs[1].stdout
    _report(capsys, 10, ok, time.perf_counter() - t0, None)
    assert runs[0].returncode == 0, runs[0].stderr.decode()[-2000:]
    assert runs[0].stdout == runs[1].stdout


def test_generated_pairs_meet_the_contract():
    pairs, _ = random_composition_pairs(3, 60)
    assert pairs == random_composition_pairs(3, 60)[0]
    for pr in pairs:
        assert 1 <= pr.Ptilde.degree <= 3 and 1 <= pr.Qtilde.degree <= 3 and 2 <= pr.W.degree <= 3
        for P in (pr.Ptilde, pr.Qtilde, pr.W):
            assert all(abs(c) <= 5 for c in P.coeffs)
        assert eval_poly(pr.W, pr.e.a) == eval_poly(pr.W, pr.e.b)


@pytest.mark.parametrize("cid", range(1, 11))
def test_corruption_is_caught(cid):
    rec, _ = run_criterion(BY_ID[cid], DEFAULT_SEED, "smoke", corrupt=True)
    assert not rec["passed"]
