"""Command-line front end.

Subcommands: ``hh``, ``tr``, ``e2``, ``koszul``, ``check``.  Exit codes: 0 on
success, 2 for malformed input, 3 when a resource budget is exceeded, 4 when
an internal self-check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

from sympy import isprime

from . import serialize as ser
from .box import BudgetExceeded
from .burnside import CyclicGroup, burnside_mackey
from .green import RingPresentation, ring_Z, ring_Zmod
from .mackey import check_axioms

EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 2, 3, 4


class InputError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


class InternalError(Exception):
    pass


def _ring(value: str, p: int) -> RingPresentation:
    if value == "Z":
        return ring_Z()
    if value == "Fp":
        return ring_Zmod(p)
    path = Path(value)
    if not path.exists():
        raise InputError("--ring", f"expected Z, Fp or a JSON file, got {value!r}")
    try:
        return RingPresentation.from_json(json.loads(path.read_text()))
    except (ValueError, KeyError, TypeError) as e:
        raise InputError("--ring", f"bad ring file: {e}") from e


def _prime(p: int) -> int:
    if not isprime(p):
        raise InputError("--p", f"{p} is not prime")
    return p


def _nonneg(flag: str, v: int) -> int:
    if v < 0:
        raise InputError(flag, "must be nonnegative")
    return v


# ---------------------------------------------------------------------------

def cmd_hh(a) -> dict:
    from .hochschild import hh_relative
    from .norm import NormError

    p = _prime(a.p)
    n = _nonneg("--n", a.n)
    k = _nonneg("--max-degree", a.max_degree)
    r = _ring(a.ring, p)
    try:
        hs = hh_relative(r, CyclicGroup(p ** n), k, q_max=a.q_max, max_raw=a.max_raw)
    except NormError as e:
        raise InputError("--ring", str(e)) from e
    degrees = []
    for i, h in enumerate(hs):
        rep = check_axioms(h)
        if not rep.ok:
            raise InternalError(f"homology in degree {i} fails the Mackey axioms: {rep}")
        degrees.append({"degree": i, **ser.mackey_summary(h)})
    return {"degrees": degrees}


def cmd_tr(a) -> dict:
    from .cyclotomic import tr_tower
    from .norm import NormError

    p = _prime(a.p)
    if a.n_max < 1:
        raise InputError("--n-max", "must be at least 1")
    k = _nonneg("--degree", a.degree)
    r = _ring(a.ring, p)
    try:
        T = tr_tower(r, p, a.n_max, k)
    except NormError as e:
        raise InputError("--ring", str(e)) from e
    return T.to_json()


def _pres_rows(pres) -> list[dict]:
    return [g.to_json() for g in pres.generators]


def cmd_e2(a) -> dict:
    from .graded import collapse_check, e2_presentation_mur, hochschild_ranks_polynomial, monomial_basis

    g = _nonneg("--gens", a.gens)
    t = _nonneg("--trunc", a.trunc)
    pres = e2_presentation_mur(g, t)
    basis = monomial_basis(pres, t)
    counts = Counter((s, d.a) for _, s, d in basis)
    weights = [i for i in range(1, g + 1) if i <= t]
    oracle = hochschild_ranks_polynomial(weights, t) if weights else {(0, 0): 1}
    agree = dict(counts) == oracle
    if not agree:
        raise InternalError("E2 monomial counts disagree with the Hochschild-complex oracle")
    col = collapse_check(pres)
    return {
        "generators": _pres_rows(pres),
        "basis": [{"monomial": m, "filtration": s, "degree": str(d)} for m, s, d in basis],
        "ranks": [{"filtration": s, "degree": str(ser_deg(w)), "rank": c} for (s, w), c in sorted(counts.items())],
        "oracle_agrees": agree,
        "collapse": col.collapses,
        "collapse_statement": col.statement,
    }


def ser_deg(w: int):
    from .graded import RHO

    return RHO * w


def cmd_koszul(a) -> dict:
    from .graded import RHO, Generator, GradedPresentation, bar_tor_ranks, koszul_tor, monomial_basis

    g = _nonneg("--gens", a.gens)
    t = _nonneg("--trunc", a.trunc)
    base = GradedPresentation("HF2*", 2, [Generator(f"b{i}", "poly", 0, RHO * i) for i in range(1, g + 1)])
    tor = koszul_tor(base, t)
    counts = Counter((s, d.a) for _, s, d in monomial_basis(tor, t))
    weights = [i for i in range(1, g + 1) if i <= t]
    oracle = bar_tor_ranks(weights, t) if weights else {(0, 0): 1}
    if dict(counts) != oracle:
        raise InternalError("Koszul ranks disagree with the bar-complex oracle")
    return {
        "generators": _pres_rows(tor),
        "ranks": [{"filtration": s, "degree": str(ser_deg(w)), "rank": c} for (s, w), c in sorted(counts.items())],
        "oracle_agrees": True,
    }


def cmd_check(a) -> dict:
    if a.input:
        path = Path(a.input)
        if not path.exists():
            raise InputError("--input", f"no such file {a.input}")
        try:
            m = ser.mackey_from_json(json.loads(path.read_text()))
        except (ValueError, KeyError, TypeError) as e:
            raise InputError("--input", f"malformed Mackey functor: {e}") from e
    else:
        m = burnside_mackey(CyclicGroup(_prime(a.p) ** _nonneg("--n", a.n)))
    rep = check_axioms(m)
    return {"pass": rep.ok, "failures": list(rep.failures), "invariants": [[r, list(t)] for r, t in m.ranks()]}


# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="greenhh", description="Twisted Hochschild homology of Green functors")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(s):
        s.add_argument("--format", choices=["json", "text"], default="json")
        s.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    s = sub.add_parser("hh", help="HH^{C_{p^n}}_e of a ring")
    s.add_argument("--ring", default="Z", help="Z, Fp or a ring JSON file")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--q-max", type=int, default=None, help="nerve level budget")
    s.add_argument("--max-raw", type=int, default=None, help="raw generator budget per box level")
    common(s)

    s = sub.add_parser("tr", help="algebraic TR tower")
    s.add_argument("--ring", default="Z")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--degree", type=int, default=0)
    common(s)

    for name, helptext in (("e2", "E2-term for MU_R"), ("koszul", "Koszul Tor over HF2*[b_i]")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--gens", type=int, required=True)
        s.add_argument("--trunc", type=int, required=True, help="truncation in multiples of rho")
        common(s)

    s = sub.add_parser("check", help="Mackey axiom check")
    s.add_argument("--input", default=None, help="Mackey functor JSON file")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--n", type=int, default=2)
    common(s)
    return ap


COMMANDS = {"hh": cmd_hh, "tr": cmd_tr, "e2": cmd_e2, "koszul": cmd_koszul, "check": cmd_check}


def _text(report: dict) -> str:
    lines = [f"command: {report['command']}  input: {report['input_digest']}"]
    res = report["result"]
    if "degrees" in res:
        for d in res["degrees"]:
            lv = ", ".join(_inv(x) for x in d["invariants"])
            lines.append(f"  HH_{d['degree']}: levels [{lv}]")
    if "stages" in res:
        lines.append("  stages: " + ", ".join(_inv(x) for x in res["stages"]))
        for n, mat in sorted(res["transitions"].items(), key=lambda kv: int(kv[0])):
            lines.append(f"  stage {n} -> {int(n) - 1}: {mat}")
        lines.append(f"  limit: {res['classification']}")
    if "generators" in res:
        lines.append("  generator  kind  (s, degree)")
        for g in res["generators"]:
            lines.append(f"  {g['name']:<9}  {g['kind']:<4}  ({g['filtration']}, {g['degree']})")
    if "ranks" in res:
        for r in res["ranks"]:
            lines.append(f"  rank in ({r['filtration']}, {r['degree']}): {r['rank']}")
    if "collapse" in res:
        lines.append(f"  collapse: {str(res['collapse']).lower()}  ({res['collapse_statement']})")
    if "pass" in res:
        lines.append(f"  axioms: {'pass' if res['pass'] else 'FAIL'}")
        lines += [f"    {f}" for f in res["failures"]]
    if "seconds" in report:
        lines.append(f"time: {report['seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def _inv(x) -> str:
    r, t = x
    parts = ([f"Z^{r}" if r > 1 else "Z"] if r else []) + [f"Z/{o}" for o in t]
    return " + ".join(parts) if parts else "0"


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    a = ap.parse_args(argv)
    echo = {k: v for k, v in sorted(vars(a).items()) if k not in ("format", "timing")}
    t0 = time.perf_counter()
    try:
        result = COMMANDS[a.command](a)
    except InputError as e:
        print(f"greenhh {a.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"greenhh {a.command}: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalError as e:
        print(f"greenhh {a.command}: internal check failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    report = {"command": a.command, "input": echo, "input_digest": ser.digest(echo), "result": result}
    if a.timing:
        report["seconds"] = time.perf_counter() - t0
    sys.stdout.write(ser.dumps(report) if a.format == "json" else _text(report))
    if a.command == "check" and not result["pass"]:
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
