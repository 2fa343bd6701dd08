"""Command-line reports: Betti tables, cocycles, Massey verdicts, singular vectors,
the resolution and thread-module cohomology, and the verification suites.

Exit codes: 0 success, 1 verification failure, 2 budget exceeded, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .cochain import Cochain, cohomology, e, pentagonal
from .exactnum import as_rational

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_PARSE = 0, 1, 2, 3

Q_MAX, W_MAX = 5, 40


class ParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

_ITEM = re.compile(r"^([+-]?(?:\d+(?:/\d+)?)?)\*?(?:e(\d+)|g(\d+)([+-]))(?:\^(\d+))?$")


def parse_rational(text: str) -> Fraction:
    try:
        return as_rational(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def g_class(k: int, sign: str) -> Cochain:
    w = pentagonal(k, 1 if sign == "+" else -1)
    reps = cohomology(k, w).representatives
    if len(reps) != 1:
        raise ParseError(f"g{k}{sign}: H^{k}_{w} is not one-dimensional")
    return reps[0]


def parse_inputs(spec: str) -> List[Cochain]:
    """'e1^2,-e2,2e1,g2+' -> list of closed forms (the ^n suffix repeats an item)."""
    out: List[Cochain] = []
    for raw in spec.split(","):
        item = raw.strip().replace(" ", "")
        m = _ITEM.match(item)
        if not m:
            raise ParseError(f"cannot parse input {raw!r}")
        coeff_text, ei, gk, gs, rep = m.groups()
        if coeff_text in ("", "+"):
            coeff = Fraction(1)
        elif coeff_text == "-":
            coeff = Fraction(-1)
        else:
            coeff = parse_rational(coeff_text)
        if coeff == 0:
            raise ParseError(f"zero coefficient in {raw!r}")
        if ei is not None:
            if int(ei) not in (1, 2):
                raise ParseError(f"e{ei} is not closed; H^1 is spanned by e1, e2")
            form = e(int(ei))
        else:
            form = g_class(int(gk), gs)
        out.extend([form.scale(coeff)] * int(rep or 1))
    if len(out) < 2:
        raise ParseError("a Massey product needs at least two inputs")
    return out


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, Cochain):
        return {"degree": x.degree, "terms": [["^".join(f"e{i}" for i in m), _jsonable(v)] for m, v in x]}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def envelope(command: str, parameters: Dict, payload: Dict) -> Dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "parameters": _jsonable(parameters),
        "engine": __version__,
        "deterministic": True,
        "payload": _jsonable(payload),
    }


def emit(report: Dict, fmt: str, table_lines: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=1))
    else:
        print("\n".join(table_lines))


def _labels(max_k: int = 3) -> Dict[str, str]:
    out = {}
    for k in range(1, max_k + 1):
        for s in "-+":
            out[f"g{k}{s}"] = repr(g_class(k, s))
    return out


class _Clock:
    def __init__(self, seconds: Optional[float]):
        self.deadline = None if seconds is None else time.perf_counter() + seconds

    def check(self):
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExceeded("time budget exceeded")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _guard(qmax: int, wmax: int):
    if qmax > Q_MAX or wmax > W_MAX:
        raise BudgetExceeded(f"budget guard: qmax <= {Q_MAX}, wmax <= {W_MAX}")


def cmd_betti(args, clock) -> int:
    _guard(args.qmax, args.wmax)
    cells = {}
    for q in range(1, args.qmax + 1):
        for mu in range(1, args.wmax + 1):
            clock.check()
            dim = cohomology(q, mu).dimension
            if dim:
                cells[(q, mu)] = dim
    lines = [f"dim H^q_mu(L1), q <= {args.qmax}, mu <= {args.wmax} (nonzero cells; * = pentagonal)"]
    for (q, mu), dim in sorted(cells.items()):
        mark = "*" if mu in (pentagonal(q, 1), pentagonal(q, -1)) else " "
        lines.append(f"  q={q} mu={mu:3d} dim={dim} {mark}")
    payload = {"cells": [[q, mu, d] for (q, mu), d in sorted(cells.items())]}
    emit(envelope("betti", {"qmax": args.qmax, "wmax": args.wmax}, payload), args.format, lines)
    return EXIT_OK


def cmd_cocycles(args, clock) -> int:
    _guard(args.qmax, args.wmax)
    out = []
    lines = ["representative cocycles (leading coefficient 1, lexicographic order)"]
    for q in range(1, args.qmax + 1):
        for mu in range(1, args.wmax + 1):
            clock.check()
            rep = cohomology(q, mu)
            for k, c in enumerate(rep.representatives):
                closed = c.d().is_zero()
                out.append({"q": q, "mu": mu, "index": k, "cocycle": c, "closed": closed})
                lines.append(f"  H^{q}_{mu}[{k}] = {c!r}  (closed: {closed})")
    emit(envelope("cocycles", {"qmax": args.qmax, "wmax": args.wmax}, {"cocycles": out}), args.format, lines)
    return EXIT_OK


def _thread_shape(inputs: List[Cochain]):
    """(m, n) if the inputs are multiples of e1^m, e2, e1^n followed by one more class."""
    ones = inputs[:-1]
    kinds = []
    for w in ones:
        if w.degree != 1 or len(w.terms) != 1:
            return None
        (mono,) = w.terms
        kinds.append(mono[0])
    if kinds.count(2) != 1 or any(k not in (1, 2) for k in kinds):
        return None
    m = kinds.index(2)
    return m, len(kinds) - m - 1


def cmd_massey(args, clock) -> int:
    from .massey import product_set, rigidity_check, spectral_check
    from .threadmod import MtildeNonzero

    inputs = parse_inputs(args.spec)
    verdict = product_set(inputs, grid_cap=args.grid_cap)
    clock.check()
    payload = {
        "inputs": inputs,
        "labels": _labels(),
        "status": verdict.status,
        "degree": verdict.degree,
        "nominal_weight": verdict.nominal_weight,
        "axes": [f"H^{verdict.degree}_{w}[{k}]" for w, k in verdict.axes],
        "kind": verdict.kind,
        "point": verdict.point,
        "directions": verdict.directions,
        "trivial": verdict.trivial,
        "parameters": verdict.param_count,
        "reason": verdict.reason,
    }
    if verdict.certificate is not None:
        payload["certificate"] = {f"a({i},{j})": v for (i, j), v in sorted(verdict.certificate.slots.items())}
    lines = [f"<{args.spec}>: {verdict.describe()}"]
    deg, w = verdict.degree, verdict.nominal_weight
    if verdict.status == "DEFINED" and w in (pentagonal(deg, 1), pentagonal(deg, -1)):
        rig = rigidity_check(inputs)
        payload["rigidity"] = {
            "top_class": rig.top_class,
            "constant_top": rig.constant_top,
            "lower_weights_zero": rig.lower_weights_zero,
            "nontrivial": rig.nontrivial,
            "single_valued": rig.single_valued,
        }
        lines.append(f"rigidity: nontrivial={rig.nontrivial} single_valued={rig.single_valued} top={[str(x) for x in rig.top_class or []]}")
    shape = _thread_shape(inputs)
    if shape is not None:
        clock.check()
        m, n = shape
        sv = spectral_check(MtildeNonzero(-(n + 1), m + 1), inputs[-1])
        payload["spectral"] = {
            "page": sv.page,
            "lower_pages_vanish": all(sv.vanishing),
            "matches_corner": sv.matches,
            "nonzero": sv.nonzero,
            "module_class": {f"H^{deg}_{w}[{k}]": v for (w, k), v in sorted(sv.corner_class.items())},
        }
        lines.append(f"spectral: d_{sv.page}(f_low (x) Omega) = f_top (x) [c(A)]: {sv.matches}; nonzero: {sv.nonzero}")
    lines.append("labels: " + ", ".join(f"{k} = {v}" for k, v in _labels().items()))
    emit(envelope("massey", {"spec": args.spec}, payload), args.format, lines)
    return EXIT_OK


def cmd_singular(args, clock) -> int:
    from .envelope import bsa_operator
    from .verma import as_operator, singular_vector

    t = parse_rational(args.t)
    if args.p * args.q > args.max_level:
        raise BudgetExceeded(f"level {args.p * args.q} above --max-level {args.max_level}")
    w = singular_vector(args.p, args.q, t)
    S = as_operator(w)
    payload = {"p": args.p, "q": args.q, "t": t, "terms": [["*".join(f"e{i}" for i in m), c] for m, c in S]}
    lines = [f"S_{args.p},{args.q}({t}) = {S!r}"]
    if args.p == 1 or args.q == 1:
        b = bsa_operator(args.p, args.q).specialize(t)
        b = b.scale(1 / b.coeff((1,) * (args.p * args.q)))
        payload["closed_formula_agrees"] = b == S
        lines.append(f"closed formula agrees: {b == S}")
    emit(envelope("singular", {"p": args.p, "q": args.q, "t": t}, payload), args.format, lines)
    return EXIT_OK if payload.get("closed_formula_agrees", True) else EXIT_FAIL


def cmd_resolution(args, clock) -> int:
    from .resolution import stage_labels, verify_exactness

    rows = []
    lines = []
    ok = True
    for k in range(1, args.kmax + 1):
        clock.check()
        rep = verify_exactness(k)
        ok &= bool(rep)
        labels = [["".join(("-" if s < 0 else "") + f"S_{p},{q}") for s, p, q in row] for row in stage_labels(k + 1)]
        rows.append({"k": k, "delta_k o delta_k+1 = 0": bool(rep), "delta_k+1": labels})
        lines.append(f"k={k}: delta_{k} o delta_{k + 1} = 0: {bool(rep)}   delta_{k + 1} = {labels}")
    emit(envelope("resolution", {"kmax": args.kmax}, {"stages": rows}), args.format, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _thread_spec(args):
    from .threadmod import A, F, Mtilde, MtildeNonzero

    lo, hi = args.lo, args.hi
    if args.variant == "A":
        if args.alpha is None:
            raise ParseError("variant A needs --alpha")
        return A(parse_rational(args.alpha), lo, hi)
    if args.variant == "F":
        if args.lam is None or args.mu is None:
            raise ParseError("variant F needs --lam and --mu")
        return F(parse_rational(args.lam), parse_rational(args.mu), lo, hi)
    if args.variant == "Mtilde":
        return Mtilde(lo, hi)
    return MtildeNonzero(lo, hi)


def cmd_thread(args, clock) -> int:
    from .cochain import module_cohomology
    from .resolution import thread_cohomology

    spec = _thread_spec(args)
    rows = []
    lines = [f"H^k_s(L1, {spec.variant}{[str(x) for x in spec.params]}[{args.lo}..{args.hi}]) via resolution vs cochains"]
    ok = True
    for s in range(args.smin, args.smax + 1):
        clock.check()
        res = thread_cohomology(spec, s, args.kmax)
        for k in range(args.kmax + 1):
            ce = module_cohomology(spec, k, s).dimension
            ok &= ce == res.dims[k]
            if res.dims[k] or ce:
                rows.append({"s": s, "k": k, "resolution": res.dims[k], "cochains": ce})
                lines.append(f"  s={s:4d} k={k}: {res.dims[k]} (resolution) {ce} (cochains)")
    params = {"variant": args.variant, "lo": args.lo, "hi": args.hi, "s": [args.smin, args.smax], "kmax": args.kmax}
    emit(envelope("thread", params, {"rows": rows, "agree": ok}), args.format, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, clock) -> int:
    from .checks import SUITES, run_suite

    if args.suite not in SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    results = run_suite(args.suite, clock.deadline)
    lines = [r.line() for r in results]
    payload = {"results": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    emit(envelope("verify", {"suite": args.suite}, payload), args.format, lines)
    if len(results) < len(SUITES[args.suite]):
        print(f"budget exceeded: {len(results)} of {len(SUITES[args.suite])} checks ran", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="l1coh", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("table", "json"), default="table")
    ap.add_argument("--budget-seconds", type=float, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="table of dim H^q_mu(L1)")
    p.add_argument("--qmax", type=int, default=4)
    p.add_argument("--wmax", type=int, default=26)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("cocycles", help="representative cocycles")
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--wmax", type=int, default=15)
    p.set_defaults(func=cmd_cocycles)

    p = sub.add_parser("massey", help="value set of a Massey product, e.g. 'e1,e2,e2' or 'e1^2,e2,e1,g2+'")
    p.add_argument("spec")
    p.add_argument("--grid-cap", type=int, default=5)
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("singular", help="singular vector S_{p,q}(t)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", default="-3/2")
    p.add_argument("--max-level", type=int, default=12)
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("resolution", help="check delta_k o delta_{k+1} = 0")
    p.add_argument("--kmax", type=int, default=2)
    p.set_defaults(func=cmd_resolution)

    p = sub.add_parser("thread", help="thread-module cohomology, resolution vs cochains")
    p.add_argument("variant", choices=("A", "F", "Mtilde", "MtildeNonzero"))
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--alpha")
    p.add_argument("--lam")
    p.add_argument("--mu")
    p.add_argument("--smin", type=int, default=-10)
    p.add_argument("--smax", type=int, default=10)
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_thread)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", nargs="?", default="all")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    clock = _Clock(args.budget_seconds)
    try:
        return args.func(args, clock)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
