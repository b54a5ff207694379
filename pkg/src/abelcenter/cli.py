"""Command-line front end. Every command prints JSON.

Exit codes: 0 success, 1 a mathematical negative (nonvanishing moments, no
witness, no center, failed check), 2 bad usage or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from typing import Callable, Optional, Sequence

from . import __version__
from .abel import DEFAULT_ORDER, center_verdict, return_map
from .algebraics import (
    EQUATIONS,
    AlgebraicNumberSpec,
    HypothesisError,
    UnsupportedDegree,
    is_algebraic_integer,
    minimal_polynomial,
)
from .chebyshev import cheb_T, cheb_U, to_cheb
from .decompose import common_witness, reduce_pair, right_factor
from .momentlab import (
    SolutionKind,
    classify,
    default_bound,
    find_composition_condition,
    mixed_moments,
)
from .poly_core import Endpoints, Poly, eval_poly, parse_rat, poly_from_json, poly_to_json, rat_str
from . import verify_suite as vs

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = {
    "poly": ("show", "compose", "eval"),
    "cheb": ("T", "U", "expand"),
    "decompose": ("right-factor", "common", "reduce"),
    "moments": ("check", "witness", "classify"),
    "abel": ("return-map", "center"),
    "alg": ("minpoly", "is-integer", "equation", "paper-eq"),
    "verify": None,  # a lemma id or "all"
    "accept": (),
}


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    subcommand: Optional[str] = None
    args: tuple[str, ...] = ()
    seed: int = 7
    json: bool = False
    bound: Optional[int] = None
    order: int = DEFAULT_ORDER
    eps: tuple[str, ...] = ()
    scale: str = "full"
    corrupt: Optional[int] = None
    output: Optional[str] = None

    def render(self) -> list[str]:
        """argv that parses back to this config."""
        argv = [self.command]
        if self.subcommand is not None:
            argv.append(self.subcommand)
        argv.extend(self.args)
        default = RunConfig(self.command)
        if self.seed != default.seed:
            argv += ["--seed", str(self.seed)]
        if self.json:
            argv.append("--json")
        if self.bound is not None:
            argv += ["--bound", str(self.bound)]
        if self.order != default.order:
            argv += ["--order", str(self.order)]
        for e in self.eps:
            argv += ["--eps", e]
        if self.scale != default.scale:
            argv += ["--scale", self.scale]
        if self.corrupt is not None:
            argv += ["--corrupt", str(self.corrupt)]
        if self.output is not None:
            argv += ["--output", self.output]
        return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of exiting so parse() is usable as a library call
        raise UsageError(message)


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(7), help="seed for randomized batches")
    p.add_argument("--json", action="store_true", default=d(False), help="compact one-line JSON")
    p.add_argument("--bound", type=int, default=d(None), help="moment bound N")
    p.add_argument("--order", type=int, default=d(DEFAULT_ORDER), help="return-map order K")
    p.add_argument("--eps", action="append", default=d(None), help="epsilon sample (repeatable)")
    p.add_argument("--scale", choices=("full", "smoke"), default=d("full"))
    p.add_argument("--corrupt", type=int, default=d(None),
                   help="negative control: run this criterion against a wrong expectation")
    p.add_argument("--output", default=d(None), help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abelcenter", description="Exact tools for the Abel parametric center problem.")
    parser.add_argument("--version", action="version", version=__version__)
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, subs in SUBCOMMANDS.items():
        sp = sub.add_parser(name)
        _add_globals(sp, suppress=True)
        if subs is None:
            sp.add_argument("subcommand", metavar="lemma")
        elif subs:
            sp.add_argument("subcommand", choices=subs)
        sp.add_argument("args", nargs="*")
    return parser


def parse(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    if ns.bound is not None and ns.bound < 0:
        raise UsageError("--bound must be >= 0")
    if ns.order < 2:
        raise UsageError("--order must be >= 2")
    return RunConfig(command=ns.command, subcommand=getattr(ns, "subcommand", None),
                     args=tuple(ns.args), seed=ns.seed, json=ns.json, bound=ns.bound,
                     order=ns.order, eps=tuple(ns.eps or ()), scale=ns.scale,
                     corrupt=ns.corrupt, output=ns.output)


# ----------------------------------------------------------------------------
# input parsing
# ----------------------------------------------------------------------------

def parse_poly(text: str) -> Poly:
    """A JSON array of rational strings, ascending by degree."""
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON at position {exc.pos}: {exc.msg}") from None
    try:
        return poly_from_json(items)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rat(text: str, what: str):
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what}: expected an integer, got {text!r}") from None


def _arity(cfg: RunConfig, names: Sequence[str]) -> None:
    if len(cfg.args) != len(names):
        raise UsageError(f"{cfg.command} {cfg.subcommand} takes {len(names)} argument(s): "
                         + " ".join(f"<{n}>" for n in names))


def _polys(cfg: RunConfig, names: Sequence[str]) -> list[Poly]:
    out = []
    for name, text in zip(names, cfg.args):
        try:
            out.append(parse_poly(text))
        except UsageError as exc:
            raise UsageError(f"<{name}>: {exc}") from None
    return out


def _pair_endpoints(cfg: RunConfig) -> tuple[Poly, Poly, Endpoints]:
    _arity(cfg, ("P", "Q", "a", "b"))
    P, Q = _polys(cfg, ("P", "Q"))
    try:
        e = Endpoints(_rat(cfg.args[2], "<a>"), _rat(cfg.args[3], "<b>"))
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return P, Q, e


# ----------------------------------------------------------------------------
# commands: each returns (payload, exit code)
# ----------------------------------------------------------------------------

Result = tuple[object, int]


def _dp(pair) -> dict:
    return {"outer": poly_to_json(pair.outer), "inner": poly_to_json(pair.inner)}


def cmd_poly(cfg: RunConfig) -> Result:
    if cfg.subcommand == "show":
        _arity(cfg, ("P",))
        (P,) = _polys(cfg, ("P",))
        deg = None if P.is_zero() else int(P.degree)
        return {"coeffs": poly_to_json(P), "degree": deg}, EXIT_OK
    if cfg.subcommand == "compose":
        _arity(cfg, ("A", "B"))
        A, B = _polys(cfg, ("A", "B"))
        from .poly_core import compose
        return {"coeffs": poly_to_json(compose(A, B))}, EXIT_OK
    _arity(cfg, ("P", "x"))
    (P,) = _polys(cfg, ("P",))
    return {"value": rat_str(eval_poly(P, _rat(cfg.args[1], "<x>")))}, EXIT_OK


def cmd_cheb(cfg: RunConfig) -> Result:
    if cfg.subcommand in ("T", "U"):
        _arity(cfg, ("n",))
        n = _int(cfg.args[0], "<n>")
        if n < 0:
            raise UsageError("<n> must be >= 0")
        P = cheb_T(n) if cfg.subcommand == "T" else cheb_U(n)
        return {"coeffs": poly_to_json(P)}, EXIT_OK
    _arity(cfg, ("P",))
    (P,) = _polys(cfg, ("P",))
    return {"d": [rat_str(c) for c in to_cheb(P).d]}, EXIT_OK


def cmd_decompose(cfg: RunConfig) -> Result:
    if cfg.subcommand == "right-factor":
        _arity(cfg, ("P", "d"))
        (P,) = _polys(cfg, ("P",))
        d = _int(cfg.args[1], "<d>")
        try:
            r = right_factor(P, d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return (_dp(r), EXIT_OK) if r is not None else ({"result": None}, EXIT_NEGATIVE)
    _arity(cfg, ("P", "Q"))
    P, Q = _polys(cfg, ("P", "Q"))
    if P.degree < 1 or Q.degree < 1:
        raise UsageError("P and Q must be nonconstant")
    if cfg.subcommand == "common":
        for W, Pt, Qt in common_witness(P, Q):
            return {"outer": [poly_to_json(Pt), poly_to_json(Qt)], "inner": poly_to_json(W)}, EXIT_OK
        return {"result": None}, EXIT_NEGATIVE
    Pt, Qt, W = reduce_pair(P, Q)
    return {"outer": [poly_to_json(Pt), poly_to_json(Qt)], "inner": poly_to_json(W)}, EXIT_OK


def cmd_moments(cfg: RunConfig) -> Result:
    P, Q, e = _pair_endpoints(cfg)
    if P.degree < 1 or Q.degree < 1:
        raise UsageError("P and Q must be nonconstant")
    if cfg.subcommand == "check":
        N = default_bound(P, Q) if cfg.bound is None else cfg.bound
        pq, qp = mixed_moments(P, Q, e, N)
        ok = pq.all_zero and qp.all_zero
        return {"PdQ": pq.to_json(), "QdP": qp.to_json()}, EXIT_OK if ok else EXIT_NEGATIVE
    if cfg.subcommand == "witness":
        w = find_composition_condition(P, Q, e)
        return (w.to_json(), EXIT_OK) if w is not None else (None, EXIT_NEGATIVE)
    # classification works on the pair with common right factors removed
    Pt, Qt, W = reduce_pair(P, Q)
    reduced = W.degree >= 2 and eval_poly(W, e.a) != eval_poly(W, e.b)
    if reduced:
        res = classify(Pt, Qt, Endpoints(eval_poly(W, e.a), eval_poly(W, e.b)), cfg.bound)
    else:
        res = classify(P, Q, e, cfg.bound)
    out = res.to_json()
    out["reduced_by"] = poly_to_json(W) if reduced else None
    return out, EXIT_NEGATIVE if res.kind == SolutionKind.Unclassified else EXIT_OK


def cmd_abel(cfg: RunConfig) -> Result:
    p, q, e = _pair_endpoints(cfg)
    rm = return_map(p, q, e, cfg.order)
    if cfg.subcommand == "return-map":
        return rm.to_json(), EXIT_OK
    eps = [_rat(x, "--eps") for x in cfg.eps]
    v = center_verdict(rm, eps)
    ok = all(v.is_center_at.values()) if eps else v.is_parametric_center
    return v.to_json(), EXIT_OK if ok else EXIT_NEGATIVE


def _json_value(v):
    if isinstance(v, Poly):
        return poly_to_json(v)
    if isinstance(v, tuple):
        return [_json_value(x) for x in v]
    return rat_str(v)


def cmd_alg(cfg: RunConfig) -> Result:
    if cfg.subcommand in ("equation", "paper-eq"):
        _arity(cfg, ("name", "n"))
        name, n = cfg.args[0], _int(cfg.args[1], "<n>")
        if name not in EQUATIONS:
            raise UsageError(f"unknown equation {name!r}; choose from {', '.join(EQUATIONS)}")
        try:
            val = EQUATIONS[name](n)
        except HypothesisError as exc:
            raise UsageError(str(exc)) from None
        return {"name": name, "n": n, "value": _json_value(val)}, EXIT_OK
    if len(cfg.args) not in (1, 3):
        raise UsageError(f"alg {cfg.subcommand} takes <P> [<lo> <hi>]")
    (P,) = _polys(cfg, ("P",))
    try:
        sel = ((_rat(cfg.args[1], "<lo>"), _rat(cfg.args[2], "<hi>")) if len(cfg.args) == 3
               else "any-root")
        spec = AlgebraicNumberSpec(P, sel)
    except (UnsupportedDegree, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if cfg.subcommand == "minpoly":
        m = minimal_polynomial(spec)
        return {"minpoly": [poly_to_json(F) for F in m] if isinstance(m, list) else poly_to_json(m)}, EXIT_OK
    ok = is_algebraic_integer(spec)
    return {"is_algebraic_integer": ok}, EXIT_OK if ok else EXIT_NEGATIVE


def _kv(args: Sequence[str]) -> dict:
    out = {}
    for a in args:
        k, sep, v = a.partition("=")
        if not sep:
            raise UsageError(f"lemma parameters are key=value, got {a!r}")
        out[k] = v
    return out


def _lemma(fn: Callable, conv: dict) -> Callable:
    def run(params: dict):
        unknown = set(params) - set(conv)
        if unknown:
            raise UsageError(f"unknown parameter(s) {sorted(unknown)}; expected {sorted(conv)}")
        kwargs = {k: conv[k](v, k) for k, v in params.items()}
        return [fn(**kwargs)]
    return run


def _str(v: str, what: str) -> str:
    return v


def _run_a_plus_b(alpha: str, beta: str, a: str, b: str):
    return vs.verify_a_plus_b(_rat(alpha, "alpha"), _rat(beta, "beta"),
                              Endpoints(_rat(a, "a"), _rat(b, "b")))


LEMMAS: dict[str, Callable] = {
    "shift-elimination": _lemma(vs.verify_l2, {"n": _int, "case": _str}),
    "affine-elimination": _lemma(vs.verify_l4, {"n": _int, "case": _str}),
    "scale-elimination": _lemma(vs.verify_ll3, {"n": _int, "case": _str}),
    "six-term-system": _lemma(vs.verify_tgv, {}),
    "chebyshev-endpoint-pairs": _lemma(vs.verify_skun, {"m1": _int, "m2": _int, "samples": _int}),
    "coprime-critical-endpoints": _lemma(vs.verify_xyi, {"m1": _int, "m2": _int, "samples": _int}),
    "three-index-endpoints": _lemma(vs.verify_three_index, {"m1": _int, "m2": _int, "m3": _int,
                                                      "samples": _int}),
    "endpoint-sum": _lemma(_run_a_plus_b, {"alpha": _str, "beta": _str, "a": _str, "b": _str}),
    "doubled-critical-points": _lemma(vs.verify_doubled_critical, {"n": _int}),
    "irrational-endpoint-moments": _lemma(vs.verify_type2_float, {"m1": _int, "m2": _int, "N": _int}),
}


def cmd_verify(cfg: RunConfig) -> Result:
    lemma = cfg.subcommand
    if lemma == "all":
        if cfg.args:
            raise UsageError("verify all takes no parameters")
        results = vs.run_all()
    elif lemma in LEMMAS:
        try:
            results = LEMMAS[lemma](_kv(cfg.args))
        except TypeError as exc:  # missing required parameter
            raise UsageError(str(exc)) from None
        except (ValueError, HypothesisError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(str(exc)) from None
    else:
        raise UsageError(f"unknown lemma {lemma!r}; choose 'all' or one of {', '.join(LEMMAS)}")
    ok = all(r.passed for r in results)
    return [r.to_json() for r in results], EXIT_OK if ok else EXIT_NEGATIVE


def cmd_accept(cfg: RunConfig) -> Result:
    from .acceptance import CRITERIA, run_acceptance
    if cfg.args:
        raise UsageError("accept takes only flags")
    if cfg.corrupt is not None and cfg.corrupt not in {c.cid for c in CRITERIA}:
        raise UsageError(f"--corrupt must name a criterion id 1..{len(CRITERIA)}")

    def progress(rec: dict, dt: float) -> None:
        mark = "PASS" if rec["passed"] else "FAIL"
        print(f"[{mark}] {rec['id']:>2} {rec['name']} ({dt:.2f} s)", file=sys.stderr, flush=True)

    report, _ = run_acceptance(cfg.seed, cfg.scale, cfg.corrupt, on_result=progress)
    return report, EXIT_OK if report["all_passed"] else EXIT_NEGATIVE


COMMANDS: dict[str, Callable[[RunConfig], Result]] = {
    "poly": cmd_poly, "cheb": cmd_cheb, "decompose": cmd_decompose, "moments": cmd_moments,
    "abel": cmd_abel, "alg": cmd_alg, "verify": cmd_verify, "accept": cmd_accept,
}


def execute(cfg: RunConfig) -> Result:
    return COMMANDS[cfg.command](cfg)


def dumps(payload, compact: bool) -> str:
    if compact:
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return json.dumps(payload, sort_keys=True, indent=2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse(argv)
        payload, code = execute(cfg)
    except UsageError as exc:
        print(f"abelcenter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps(payload, cfg.json)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
