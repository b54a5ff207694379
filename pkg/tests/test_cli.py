from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelcenter.cli import RunConfig, UsageError, main, parse, parse_poly
from abelcenter.poly_core import Poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_parse_poly_examples():
    assert parse_poly('["-1","0","2"]') == Poly([-1, 0, 2])
    assert parse_poly('["0"]').is_zero()
    assert parse_poly('["1/3","0","0","1"]') == Poly([1, 0, 0, 3]) / 3
    assert parse_poly('["1","2","0"]').coeffs == (1, 2)


@pytest.mark.parametrize("text,where", [('["1", "x"]', "entry 1"), ('["1",', "position 5"),
                                        ('"1"', "JSON array"), ('["1/0"]', "entry 0")])
def test_parse_poly_errors(text, where):
    with pytest.raises(UsageError, match=where):
        parse_poly(text)


def test_bad_input_exit_code(capsys):
    code, _, err = run(capsys, "poly", "show", '["1","2/x"]')
    assert code == 2 and "entry 1" in err


def test_unknown_flag_rejected(capsys):
    code, _, err = run(capsys, "cheb", "T", "3", "--frobnicate")
    assert code == 2 and "unrecognized" in err
    with pytest.raises(UsageError):
        parse(["cheb", "T", "3", "--frobnicate"])


def test_unknown_subcommand(capsys):
    assert run(capsys, "cheb", "V", "3")[0] == 2
    assert run(capsys, "nosuch")[0] == 2


configs = st.builds(
    RunConfig,
    command=st.sampled_from(["moments", "abel", "accept", "verify"]),
    subcommand=st.none(),
    args=st.lists(st.sampled_from(['["0","1"]', "-1", "1/2", "n=6"]), max_size=4).map(tuple),
    seed=st.integers(0, 99), json=st.booleans(), bound=st.none() | st.integers(0, 30),
    order=st.integers(2, 10), eps=st.lists(st.sampled_from(["1", "-1", "0", "1/2"]), max_size=3).map(tuple),
    scale=st.sampled_from(["full", "smoke"]), corrupt=st.none() | st.integers(1, 10),
    output=st.none() | st.just("/tmp/out.json"),
)


@given(configs)
def test_render_parse_round_trip(cfg):
    sub = {"moments": "check", "abel": "center", "accept": None, "verify": "all"}[cfg.command]
    cfg = RunConfig(**{**cfg.__dict__, "subcommand": sub})
    assert parse(cfg.render()) == cfg


def test_cheb(capsys):
    assert run(capsys, "cheb", "T", "3")[1] == {"coeffs": ["0", "-3", "0", "4"]}
    assert run(capsys, "cheb", "U", "2")[1] == {"coeffs": ["-1", "0", "4"]}
    assert run(capsys, "cheb", "expand", '["0","0","1"]')[1] == {"d": ["1/2", "0", "1/2"]}


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "right-factor", '["0","0","2","0","1"]', "2")
    assert code == 0 and out == {"outer": ["0", "2", "1"], "inner": ["0", "0", "1"]}
    code, out, _ = run(capsys, "decompose", "right-factor", '["1","1","0","0","1"]', "2")
    assert code == 1 and out == {"result": None}
    code, out, _ = run(capsys, "decompose", "common", '["0","0","0","1"]', '["0","0","1"]')
    assert code == 1 and out == {"result": None}
    code, out, _ = run(capsys, "decompose", "reduce", '["0","0","0","0","1"]', '["0","0","0","0","0","0","1"]')
    assert out == {"outer": [["0", "0", "1"], ["0", "0", "0", "1"]], "inner": ["0", "0", "1"]}
    assert run(capsys, "decompose", "right-factor", '["0","0","1"]', "3")[0] == 2


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "check", '["0","0","1"]', '["0","0","1","0","1"]', "-1", "1",
                       "--bound", "5")
    assert code == 0 and out["PdQ"]["all_zero"] and out["QdP"]["bound"] == 5
    code, out, _ = run(capsys, "moments", "check", '["0","1"]', '["0","0","1"]', "-1", "1")
    assert code == 1 and out["PdQ"]["values"][1] == [1, "4/3"]
    code, out, _ = run(capsys, "moments", "witness", '["0","0","1"]', '["0","0","1","0","1"]', "-1", "1")
    assert code == 0 and out["W"] == ["0", "0", "1"]
    code, out, _ = run(capsys, "moments", "witness", '["0","0","1"]', '["0","0","1","0","1"]', "0", "1")
    assert code == 1 and out is None
    code, out, _ = run(capsys, "moments", "check", '["0","1"]', '["0","0","1"]', "1", "1")
    assert code == 2


def test_moments_classify(capsys):
    code, out, _ = run(capsys, "moments", "classify", '["0","0","1","0","-2","0","1"]', '["0","-1","1","1"]',
                       "-1", "1")
    assert code == 0 and out["kind"] == "Type1" and out["reduced_by"] is None
    T6 = '["-1","0","18","0","-48","0","32"]'
    T2pT3 = '["-1","-3","2","4"]'
    code, out, _ = run(capsys, "moments", "classify", T6, T2pT3, "-1", "1")
    assert code == 1 and out["kind"] == "Unclassified" and out["note"]
    # a common right factor that separates the endpoints is stripped first
    code, out, _ = run(capsys, "moments", "classify", '["0","0","1"]', '["0","0","0","0","1"]', "0", "1")
    assert out["reduced_by"] == ["0", "0", "1"]


def test_abel(capsys):
    code, out, _ = run(capsys, "abel", "return-map", '["0","2"]', '["0","0","3"]', "-1", "1", "--order", "3")
    assert code == 0 and [3, 1, "2"] in out["w"] and out["order"] == 3
    code, out, _ = run(capsys, "abel", "center", '["0","2"]', '["0","2","0","4"]', "-1", "1",
                       "--eps", "1", "--eps", "-1")
    assert code == 0 and out["is_parametric_center"] and "up to order 8" in out["note"]
    code, out, _ = run(capsys, "abel", "center", '["0","2"]', '["0","0","3"]', "-1", "1")
    assert code == 1 and out["first_obstruction"] == [3, 1, "2"]


def test_alg(capsys):
    code, out, _ = run(capsys, "alg", "minpoly", '["-3","0","5"]')
    assert out == {"minpoly": [["-3/5", "0", "1"]]}
    assert run(capsys, "alg", "is-integer", '["1","0","-3","0","1"]')[0] == 0
    assert run(capsys, "alg", "is-integer", '["-3","0","5"]')[0] == 1
    code, out, _ = run(capsys, "alg", "minpoly", '["-4","0","1"]', "0", "3")
    assert out == {"minpoly": ["-2", "1"]}
    code, out, _ = run(capsys, "alg", "paper-eq", "ur", "6")
    assert out["value"] == ["120", "0", "-360", "0", "120"]
    assert run(capsys, "alg", "equation", "azx", "6")[1]["value"] == "3/20"
    assert run(capsys, "alg", "equation", "azx", "4")[0] == 2
    assert run(capsys, "alg", "minpoly", '["0","0","0","0","0","1"]')[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "shift-elimination", "n=6", "case=azx")
    assert code == 0 and out[0]["lemma_id"] == "shift-elimination" and out[0]["passed"]
    code, out, _ = run(capsys, "verify", "endpoint-sum", "alpha=1", "beta=1", "a=0", "b=1")
    assert code == 0 and out[0]["applicable"] is False
    assert run(capsys, "verify", "coprime-critical-endpoints", "m1=4", "m2=6")[0] == 2
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "verify", "doubled-critical-points", "k=3")[0] == 2
    code, out, _ = run(capsys, "verify", "all")
    assert code == 0 and len(out) > 100


def test_output_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    assert main(["cheb", "T", "2", "--json", "--output", str(path)]) == 0
    assert path.read_text() == '{"coeffs":["-1","0","2"]}\n'


def test_accept_smoke(capsys):
    code, out, err = run(capsys, "accept", "--scale", "smoke", "--json")
    assert code == 0 and out["all_passed"] and [c["id"] for c in out["criteria"]] == list(range(1, 11))
    assert "PASS" in err


def test_accept_corrupted(capsys):
    code, out, _ = run(capsys, "accept", "--scale", "smoke", "--corrupt", "5")
    assert code == 1 and [c["id"] for c in out["criteria"] if not c["passed"]] == [5]
    assert run(capsys, "accept", "--corrupt", "11")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "abelcenter", "cheb", "T", "2", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout) == {"coeffs": ["-1", "0", "2"]}
