"""Command-line front end: ``arithtype {gen,digits,member,conditions,witness,certify,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from .circle import CirclePoint, parse_rational
from .constructions import (
    DichotomyCase,
    HypothesisError,
    WitnessCase,
    WitnessRecipe,
    adversarial_multiplier,
    check_family,
    fold_witness,
    sweep_certificates,
)
from .digits import DigitExpansion, PeriodicTail, ZeroTail, supp, supp_q, to_digits
from .membership import (
    DEFAULT_HORIZON,
    DEFAULT_TOLERANCE,
    FiniteSupport,
    PeriodicTailAllZero,
    check_conditions,
    decide,
    sufficient_divergent,
)
from .sequences import BlockSparse, ExplicitSet
from .specfile import SpecError, load_schedule, parse_digits
from .verify import DEFAULT_SCALE, SUITES, run_suites

REPORT_FORMAT = "arithtype-report"
REPORT_VERSION = 1


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit(args, command: str, body: dict, text: list[str]) -> None:
    if args.format == "json":
        report = {"format": REPORT_FORMAT, "version": REPORT_VERSION, "command": command, **body}
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


def _point(text: str) -> CirclePoint:
    try:
        f = parse_rational(text)
        return CirclePoint.of(f.numerator, f.denominator)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tolerance(text: str) -> Fraction:
    try:
        tol = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad tolerance {text!r}; expected p/q") from None
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


def _source(text: str, schedule) -> DigitExpansion:
    """A rational ``p/q`` (expanded exactly) or a digit-list file."""
    if re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", text):
        return to_digits(_point(text), schedule.base, 1)
    return parse_digits(Path(text).read_text(), schedule.base)


# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    m = load_schedule(args.spec)
    terms = m.terms(args.count)
    _emit(args, "gen", {"schedule": m.describe(), "terms": [str(t) for t in terms]}, [str(t) for t in terms])
    return 0


def cmd_digits(args) -> int:
    m = load_schedule(args.spec)
    x = _point(args.x)
    d = to_digits(x, m.base, args.count)
    finite = isinstance(d.tail, ZeroTail)
    body = {
        "x": str(x),
        "window": list(d.window),
        "tail": d.tail.describe(),
        "canonical": d.is_canonical(),
    }
    text = [f"x: {x}", f"digits: {','.join(map(str, d.window))}", f"tail: {d.tail.describe()}"]
    if finite or isinstance(d.tail, PeriodicTail):
        top = len(d.window)
        sp = supp(d, top).members(1, top)
        sq = supp_q(d, top).members(1, top)
        body.update(supp=sp, supp_q=sq, supp_infinite=not finite and any(d.tail.digits))
        text += [f"supp (window): {sp}", f"supp^q (window): {sq}",
                 f"support: {'finite' if not body['supp_infinite'] else 'infinite'}"]
    _emit(args, "digits", body, text)
    return 0


def cmd_member(args) -> int:
    m = load_schedule(args.spec)
    x = _point(args.x)
    v = decide(x, m, args.horizon)
    body = {"x": str(x), "status": v.status.value, "horizon": v.horizon, "reason": v.reason}
    text = [f"x: {x}", f"verdict: {v.status.value}"]
    c = v.certificate
    if isinstance(c, FiniteSupport):
        body["certificate"] = {"kind": "finite-support", "block": c.block, "flat_index": c.flat_index}
        text.append(f"certificate: finite support, block {c.block}, orbit zero from index {c.flat_index}")
    elif isinstance(c, PeriodicTailAllZero):
        body["certificate"] = {"kind": "periodic-zero-tail", "start_block": c.start_block,
                               "cycle_length": c.cycle_length}
        text.append(f"certificate: zero periodic tail from block {c.start_block}")
    if v.witness is not None:
        w = v.witness
        body["witness"] = {"flat_index": w.flat_index, "block": w.block, "multiplier": w.multiplier,
                           "norm": _q(w.norm)}
        text.append(f"witness: index {w.flat_index} (block {w.block}, r={w.multiplier}), norm {_q(w.norm)}")
    if v.reason:
        text.append(f"reason: {v.reason}")
    _emit(args, "member", body, text)
    return 0


def _index_set(spec: str, horizon: int):
    """``list:1,4,9`` (finite) or ``every:K`` / ``every:K+J`` (infinite)."""
    kind, _, rest = spec.partition(":")
    if kind == "list":
        return ExplicitSet(tuple(int(t) for t in rest.split(",") if t.strip()))
    if kind == "every":
        mt = re.fullmatch(r"(\d+)(?:\+(\d+))?", rest.strip())
        if mt:
            k, j = int(mt.group(1)), int(mt.group(2) or 0)
            return BlockSparse(lambda n: n % k == j % k, horizon, label=f"every-{k}+{j}")
    raise argparse.ArgumentTypeError(f"bad index set {spec!r}; use list:1,2,3 or every:K[+J]")


def _report_json(r) -> dict:
    return {
        "a_class": r.a_class.kind.value if r.a_class else None,
        "shifted_class": r.shifted_class.kind.value if r.shifted_class else None,
        "window": list(r.window),
        "tolerance": _q(r.tolerance),
        "finite_support": r.finite_support,
        "status": r.status.value,
        "conditions": [
            {"name": c.name, "applicable": c.applicable, "status": c.status.value,
             "claims": [{"claim": cl.claim, "status": cl.status.value,
                         "sup": None if cl.sup is None else _q(cl.sup),
                         "bound": None if cl.bound is None else _q(cl.bound),
                         "index": cl.index, "multiplier": cl.multiplier} for cl in c.claims]}
            for c in r.conditions
        ],
    }


def _report_text(name: str, r) -> list[str]:
    out = [f"set {name}: {r.status.value}" + (" (finite support: member regardless)" if r.finite_support else "")]
    for c in r.conditions:
        if not c.applicable:
            continue
        out.append(f"  {c.name}: {c.status.value}")
        for cl in c.claims:
            extra = ""
            if cl.sup is not None:
                extra = f" sup {_q(cl.sup)}"
            if cl.index is not None:
                extra += f" at n={cl.index}" + (f" r={cl.multiplier}" if cl.multiplier is not None else "")
            out.append(f"    {cl.claim}: {cl.status.value}{extra}")
    return out


def cmd_conditions(args) -> int:
    m = load_schedule(args.spec)
    d = _source(args.source, m)
    tol = _tolerance(args.tolerance)
    if args.set:
        reports = [(s, check_conditions(d, m, _index_set(s, args.horizon), args.horizon, args.window, tol))
                   for s in args.set]
    else:
        reports = check_family(d, m, args.horizon, args.window, tol)
    body = {"source": args.source, "horizon": args.horizon, "sets": [{"set": n, **_report_json(r)} for n, r in reports]}
    text = [line for n, r in reports for line in _report_text(n, r)]
    _emit(args, "conditions", body, text)
    return 0


def cmd_witness(args) -> int:
    m = load_schedule(args.spec)
    x = _source(args.source, m)
    case = WitnessCase(args.case)
    y = fold_witness(WitnessRecipe(x, case), args.horizon, args.window)
    verdict = sufficient_divergent(y, m, args.horizon, args.window, _tolerance(args.tolerance))
    digits = y.digits(1, args.horizon)
    rule = "non-cofinite fold" if case is WitnessCase.NON_COFINITE else "cofinite fold"
    body = {"case": case.value, "horizon": args.horizon, "digits": digits, "rule": rule,
            "sufficient": verdict.value}
    text = [f"digits: {','.join(map(str, digits))}", "tail: unknown", f"rule: {rule} (to {args.horizon})",
            f"# sufficient: {verdict.value}"]
    _emit(args, "witness", body, text)
    return 0


def cmd_certify(args) -> int:
    if args.sweep:
        results = sweep_certificates(args.sweep)
        rows = [{"case": c.value, "checked": r.checked, "failures": r.failures, "folded_outside": r.folded_outside,
                 "min_attained": None if r.min_attained is None else _q(r.min_attained), "bound": _q(r.bound)}
                for c, r in results.items()]
        text = ["case  checked  failures  folded-outside  min-attained  bound"]
        text += [f"{r['case']:<5} {r['checked']:>8} {r['failures']:>9} {r['folded_outside']:>15}  "
                 f"{r['min_attained'] or '-':>12}  {r['bound']}" for r in rows]
        _emit(args, "certify", {"q_max": args.sweep, "rows": rows}, text)
        return 0 if all(r["failures"] == 0 and r["folded_outside"] == 0 for r in rows) else 1
    if args.c is None or args.q is None:
        raise ValueError("certify needs C and Q, or --sweep QMAX")
    case = DichotomyCase(args.case) if args.case else None
    b = adversarial_multiplier(args.c, args.q, case, args.next_ratio)
    row = {"case": b.case.value, "t": b.t, "r": b.r, "bound": _q(b.bound), "attained": _q(b.attained),
           "holds": b.holds}
    _emit(args, "certify", {"c": args.c, "q": args.q, "rows": [row]},
          ["case  t  r  bound  attained", f"{row['case']} {b.t} {b.r} {row['bound']} {row['attained']}"])
    return 0 if b.holds else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    jobs = args.jobs if args.jobs else 1
    results = run_suites(names, args.seed, args.scale, jobs)
    body = {"seed": args.seed, "suites": []}
    text = []
    for r in results:
        entry = {"suite": r.suite, "scale": r.scale, "ok": r.ok,
                 "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in r.checks]}
        if not r.ok:
            entry["repro"] = r.repro
        if args.timing:
            entry["wall_time"] = round(r.wall_time, 3)
        body["suites"].append(entry)
        head = f"suite {r.suite} (seed {r.seed}, scale {r.scale}): {'PASS' if r.ok else 'FAIL'}"
        if args.timing:
            head += f" [{r.wall_time:.2f}s]"
        text.append(head)
        text += [f"  {c.status:<12} {c.name}: {c.detail}" for c in r.checks]
        if not r.ok:
            text.append(f"  reproduce: {r.repro}")
    body["ok"] = all(r.ok for r in results)
    _emit(args, "verify", body, text)
    return 0 if body["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arithtype", description="Exact tools for arithmetic-type sequences on the circle.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("--spec", required=True, help="sequence spec file")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def limits(sp):
        sp.add_argument("--horizon", type=int, default=400)
        sp.add_argument("--window", type=int, default=None, help="window start (default horizon // 2)")
        sp.add_argument("--tolerance", default=_q(DEFAULT_TOLERANCE), help="p/q (default 1/64)")

    sp = sub.add_parser("gen", help="print flattened sequence terms")
    common(sp)
    sp.add_argument("--count", type=int, required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("digits", help="canonical digits of a rational")
    sp.add_argument("x", help="p/q")
    common(sp)
    sp.add_argument("--count", "-N", type=int, default=20, help="digits to compute")
    sp.set_defaults(func=cmd_digits)

    sp = sub.add_parser("member", help="membership verdict for a rational")
    sp.add_argument("x", help="p/q")
    common(sp)
    sp.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("conditions", help="check the characterization conditions")
    sp.add_argument("source", help="p/q or a digit-list file")
    common(sp)
    limits(sp)
    sp.add_argument("--set", action="append", help="index set: list:1,2,3 or every:K[+J]; default: automatic family")
    sp.set_defaults(func=cmd_conditions)

    sp = sub.add_parser("witness", help="fold a source expansion into a sparse witness")
    sp.add_argument("source", help="p/q or a digit-list file")
    common(sp)
    limits(sp)
    sp.add_argument("--case", choices=[c.value for c in WitnessCase], default=WitnessCase.NON_COFINITE.value)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("certify", help="adversarial multiplier certificates")
    sp.add_argument("c", type=int, nargs="?")
    sp.add_argument("q", type=int, nargs="?")
    sp.add_argument("--case", choices=[c.value for c in DichotomyCase])
    sp.add_argument("--next-ratio", type=int, default=None)
    sp.add_argument("--sweep", type=int, metavar="QMAX", help="exhaustive check for all q <= QMAX")
    common(sp, spec=False)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suite", choices=[*SUITES, "all"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=int, default=None,
                    help="suite size; defaults: " + ", ".join(f"{k}={v}" for k, v in DEFAULT_SCALE.items()))
    sp.add_argument("--jobs", type=int, default=1, help=f"worker processes for 'all' (cpus here: {os.cpu_count()})")
    sp.add_argument("--timing", action="store_true", help="include wall times (reports stop being byte-identical)")
    common(sp, spec=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {args.spec}: {exc}", file=sys.stderr)
        return 2
    except (HypothesisError, ValueError, LookupError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
