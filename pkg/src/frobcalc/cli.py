"""Command-line interface: ``frobcalc <command> --ring ... [--json]``.

Exit codes: 0 success, 1 usage error, 2 domain error (bad q, unstabilized
chain, a nonunit required, ...).  ``--json`` prints one report object whose
``result`` payload is deterministic; only ``timing`` varies between runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .checks import run_identity_suite
from .content import SplitContext, content_witness, poly_content
from .errors import FrobcalcError, UnstabilizedError
from .frobenius import bracket_power, frobenius_root, parse_q
from .groebner import Ideal, ideal_intersect
from .hsl import DEFAULT_SMAX, FrobeniusActionSpec, hsl_chain
from .invariants import (
    DEFAULT_FPT_EMAX,
    DEFAULT_TAU_EMAX,
    as_fraction,
    bms_test_ideal,
    default_denominators,
    fpt,
    jumping_numbers,
    nu,
)
from .ring import RingContext


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ideal_payload(I: Ideal) -> dict:
    return I.basis_dict()


# command handlers: each returns (inputs, result, witnesses, text) -------------------------


def _one_ideal(args, ctx):
    if len(args.ideal or []) != 1:
        raise UsageError(f"{args.command} takes exactly one --ideal")
    return Ideal.parse(ctx, args.ideal[0])


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{args.command} requires --{name.replace('_', '-')}")
    return value


def cmd_gb(args, ctx):
    I = _one_ideal(args, ctx)
    basis = [str(g) for g in I.basis]
    return {"ideal": I.to_dict()}, {"basis": basis}, {}, "\n".join(basis) or "0"


def cmd_member(args, ctx):
    I = _one_ideal(args, ctx)
    f = ctx.poly(_need(args, "poly"))
    nf = I.normal_form(f)
    return (
        {"ideal": I.to_dict(), "poly": str(f)},
        {"member": nf.is_zero()},
        {"normal_form": str(nf), "basis": [str(g) for g in I.basis]},
        "true" if nf.is_zero() else f"false (normal form {nf})",
    )


def cmd_intersect(args, ctx):
    if len(args.ideal or []) < 2:
        raise UsageError("intersect needs at least two --ideal")
    ideals = [Ideal.parse(ctx, s) for s in args.ideal]
    out = ideals[0]
    for J in ideals[1:]:
        out = ideal_intersect(out, J)
    contained = [out.issubset(J) for J in ideals]
    return (
        {"ideals": [J.to_dict() for J in ideals]},
        {"ideal": _ideal_payload(out)},
        {"contained_in_each": contained},
        str(out.minimalized()),
    )


def cmd_bracket(args, ctx):
    I = _one_ideal(args, ctx)
    q = parse_q(_need(args, "q"), ctx)
    out = bracket_power(I, q)
    return {"ideal": I.to_dict(), "q": q}, {"ideal": _ideal_payload(out)}, {}, str(out.minimalized())


def cmd_root(args, ctx):
    I = _one_ideal(args, ctx)
    q = parse_q(_need(args, "q"), ctx)
    out = frobenius_root(I, q)
    contained = I.issubset(bracket_power(out, q))
    return (
        {"ideal": I.to_dict(), "q": q},
        {"ideal": _ideal_payload(out)},
        {"ideal_in_bracket_of_root": contained},
        str(out.minimalized()),
    )


def cmd_nu(args, ctx):
    g = ctx.poly(_need(args, "poly"))
    q = parse_q(_need(args, "q"), ctx)
    e = 0
    while ctx.p**e < q:
        e += 1
    if e == 0:
        raise FrobcalcError("nu needs q = p^e with e >= 1")
    value = nu(g, e)
    return {"poly": str(g), "q": q}, {"nu": value, "e": e}, {}, str(value)


def cmd_tau(args, ctx):
    I = _one_ideal(args, ctx)
    t = as_fraction(_need(args, "t"))
    emax = args.emax or DEFAULT_TAU_EMAX
    ideal, chain = bms_test_ideal(I, t, emax)
    return (
        {"ideal": I.to_dict(), "t": str(t), "emax": emax},
        {"ideal": _ideal_payload(ideal)},
        {"chain": chain.to_dict()},
        str(ideal),
    )


def cmd_fpt(args, ctx):
    g = ctx.poly(_need(args, "poly"))
    emax = args.emax or DEFAULT_FPT_EMAX
    dens = default_denominators(ctx.p, args.denom_bound or 24)
    res = fpt(g, emax, dens)
    payload = res.to_dict()
    cert = payload.pop("certificate")
    if res.certified is not None:
        text = f"certified {res.certified}"
    else:
        text = f"{res.lower} < fpt <= {res.upper} (not certified)"
    return (
        {"poly": str(g), "emax": emax, "denom_bound": args.denom_bound or 24},
        payload,
        {"certificate": cert},
        text,
    )


def cmd_jumps(args, ctx):
    g = ctx.poly(_need(args, "poly"))
    lo = as_fraction(args.lo if args.lo is not None else "0")
    hi = as_fraction(args.hi if args.hi is not None else "1")
    emax = args.emax or DEFAULT_TAU_EMAX
    bound = args.denom_bound or 12
    res = jumping_numbers(g, lo, hi, emax, bound)
    payload = res.to_dict()
    wit = payload.pop("witnesses")
    text = "{" + ", ".join(str(t) for t in res.numbers) + "}"
    if not res.complete:
        text += " (incomplete)"
    return (
        {"poly": str(g), "lo": str(lo), "hi": str(hi), "emax": emax, "denom_bound": bound},
        payload,
        {"jumps": wit},
        text,
    )


def cmd_hsl(args, ctx):
    smax = args.smax or DEFAULT_SMAX
    if args.multiplier is not None:
        spec = FrobeniusActionSpec(ctx.poly(args.multiplier), args.a if args.a is not None else 1, args.beta or 1)
        inputs = {"action": spec.to_dict()}
    else:
        f = ctx.poly(_need(args, "poly"))
        if args.a is not None or args.beta is not None:
            raise UsageError("--a/--beta apply to --multiplier")
        spec = FrobeniusActionSpec.hypersurface(f)
        inputs = {"poly": str(f), "action": spec.to_dict()}
    inputs["smax"] = smax
    chain = hsl_chain(spec, smax)
    return inputs, {"hsl": chain.stabilization_index}, {"chain": chain.to_dict()}, str(chain.stabilization_index)


def cmd_content(args, ctx):
    f = ctx.poly(_need(args, "poly"))
    split = SplitContext.parse(ctx, args.base or "")
    c = poly_content(f, split)
    wit = [{"monomial": str(m), "coefficient": str(k)} for m, k in content_witness(f, split)]
    return (
        {"poly": str(f), "base": list(split.base)},
        {"ideal": c.to_dict()},
        {"expansion": wit},
        str(c.ideal.minimalized()),
    )


def cmd_check(args, ctx):
    seed = args.seed if args.seed is not None else 0
    count = args.count or 20
    rows = run_identity_suite(seed, count)
    ok = all(r["failed"] == 0 for r in rows.values())
    summary = {name: {"passed": r["passed"], "failed": r["failed"]} for name, r in rows.items()}
    failures = {name: r["first_failure"] for name, r in rows.items() if r["failed"]}
    lines = []
    for name, r in rows.items():
        total = r["passed"] + r["failed"]
        lines.append(f"{'PASS' if r['failed'] == 0 else 'FAIL'} {name} ({r['passed']}/{total})")
    result = {"all_passed": ok, "identities": summary}
    return {"seed": seed, "count": count}, result, {"failures": failures}, "\n".join(lines)


COMMANDS = {
    "gb": (cmd_gb, "reduced Groebner basis"),
    "member": (cmd_member, "ideal membership of --poly"),
    "intersect": (cmd_intersect, "intersection of the given ideals"),
    "bracket": (cmd_bracket, "bracket power I^[q]"),
    "root": (cmd_root, "Frobenius root I^[1/q]"),
    "nu": (cmd_nu, "nu-invariant of --poly at --q"),
    "tau": (cmd_tau, "test ideal tau(I^t)"),
    "fpt": (cmd_fpt, "F-pure threshold of --poly"),
    "jumps": (cmd_jumps, "F-jumping numbers of --poly in (lo, hi]"),
    "hsl": (cmd_hsl, "HSL number of S/(f) or of a custom action"),
    "content": (cmd_content, "content ideal over the --base variables"),
    "check": (cmd_check, "identity suite over a seeded random corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frobcalc", description="Frobenius invariants over F_p[x1..xn].")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--ring", required=name != "check", help='e.g. "p=7;vars=x,y;order=grevlex"')
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        if name in {"gb", "member", "intersect", "bracket", "root", "tau"}:
            sp.add_argument("--ideal", action="append", help="comma-separated generators; repeatable")
        if name in {"member", "nu", "fpt", "jumps", "hsl", "content"}:
            sp.add_argument("--poly")
        if name in {"bracket", "root", "nu"}:
            sp.add_argument("--q", help="p^e or an integer power of p")
        if name == "tau":
            sp.add_argument("--t", help="exact fraction a/b")
        if name in {"tau", "fpt", "jumps"}:
            sp.add_argument("--emax", type=int)
        if name in {"fpt", "jumps"}:
            sp.add_argument("--denom-bound", type=int)
        if name == "jumps":
            sp.add_argument("--lo", help="exact fraction, default 0")
            sp.add_argument("--hi", help="exact fraction, default 1")
        if name == "hsl":
            sp.add_argument("--smax", type=int)
            sp.add_argument("--multiplier", help="custom multiplier u")
            sp.add_argument("--a", type=int, help="power of u in the action")
            sp.add_argument("--beta", type=int, help="Frobenius exponent of the action")
        if name == "content":
            sp.add_argument("--base", help="comma-separated base variables")
        if name == "check":
            sp.add_argument("--seed", type=int)
            sp.add_argument("--count", type=int, help="instances per identity (default 20)")
    return parser


def _emit(report, as_json, text, stream):
    if as_json:
        stream.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def run(argv=None, stdout=None, stderr=None):
    """Run one invocation; returns (exit code, report dict or None)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1, None
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), None
    handler = COMMANDS[args.command][0]
    report = {
        "command": args.command,
        "argv": argv,
        "ring": args.ring,
        "inputs": None,
        "result": None,
        "witnesses": {},
        "timing": {},
        "version": __version__,
    }
    start = time.perf_counter()
    try:
        ctx = RingContext.parse(args.ring) if args.ring else None
        if ctx is not None:
            report["ring"] = ctx.to_string()
        inputs, result, witnesses, text = handler(args, ctx)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1, None
    except FrobcalcError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, UnstabilizedError) and exc.chain is not None:
            report["witnesses"] = {"partial_chain": exc.chain.to_dict()}
        report["timing"] = {"seconds": time.perf_counter() - start}
        stderr.write(f"error: {exc}\n")
        if args.json:
            _emit(report, True, "", stdout)
        return 2, report
    report.update(inputs=inputs, result=result, witnesses=witnesses)
    report["timing"] = {"seconds": time.perf_counter() - start}
    _emit(report, args.json, text, stdout)
    code = 0
    if args.command == "check" and not result["all_passed"]:
        code = 2
    return code, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
