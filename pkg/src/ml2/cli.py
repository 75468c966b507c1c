"""Command-line interface.

``ml2 check FILE...`` parses and kernel-checks surface-language files;
``ml2 suite`` runs the finite-groupoid verification suite.  Both commands
support ``--json`` and emit a versioned report that is byte-identical
across runs except for the ``elapsed_seconds`` field.  Exit status: 0 when
everything passes, 1 when an assertion or certificate fails, 2 on usage,
I/O, or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .syntax import Context, Id, Refl, Star, TermConst, TypeConst, \
    TypeDecl, TermDecl, Signature, JElim, UnitElim, Unit, Term, Var, weaken
from .kernel import (
    Judgement, KernelError, FuelError, ConversionState, check_judgement,
    judgement_holds, validate_signature, admit_equation, convertible,
)
from .parser import ParseError, parse, elaborate
from . import gpdmodel

CHECK_SCHEMA = "ml2-check/1"
SUITE_SCHEMA = "ml2-suite/1"


# ---------------------------------------------------------------------------
# check

def _run_assertion(a, sig, state):
    """Evaluate one assertion; returns (passed, detail, new state)."""
    try:
        if a.kind == "check":
            check_judgement(Judgement("term", a.context, a.payload), sig,
                            state)
            return True, "well-typed", state
        if a.kind == "check-type":
            check_judgement(Judgement("type", a.context, a.payload), sig,
                            state)
            return True, "well-formed", state
        if a.kind == "equal-type":
            ok = judgement_holds(
                Judgement("type-eq", a.context, a.payload), sig, state)
            return ok, ("types convertible" if ok
                        else "types not convertible"), state
        if a.kind == "equal":
            t, u, at = a.payload
            if a.witness is not None:
                state = admit_equation(a.context, t, u, at, a.witness,
                                       sig, state)
            ok = convertible(a.context, t, u, at, sig, state)
            return ok, ("convertible" if ok else "not convertible"), state
        if a.kind == "not-equal":
            t, u, at = a.payload
            ok = not convertible(a.context, t, u, at, sig, state)
            return ok, ("not convertible" if ok
                        else "unexpectedly convertible"), state
        return False, f"unknown assertion kind {a.kind!r}", state
    except (KernelError, FuelError) as exc:
        return False, str(exc), state


def _check_file(path: str) -> dict:
    entry = {"file": path, "passed": True, "error": None, "assertions": []}
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        entry["passed"] = False
        entry["error"] = {"kind": "io", "message": str(exc)}
        return entry
    try:
        sig, asserts = elaborate(parse(text))
        validate_signature(sig)
    except ParseError as exc:
        entry["passed"] = False
        entry["error"] = {"kind": "parse", "message": str(exc),
                          "line": exc.line, "col": exc.col}
        return entry
    except (KernelError, FuelError) as exc:
        entry["passed"] = False
        entry["error"] = {"kind": "signature", "message": str(exc)}
        return entry
    state = ConversionState()
    for a in asserts:
        ok, detail, state = _run_assertion(a, sig, state)
        entry["assertions"].append({
            "line": a.span.line, "col": a.span.col, "kind": a.kind,
            "text": a.text, "passed": ok, "detail": detail,
        })
        if not ok:
            entry["passed"] = False
    return entry


def cmd_check(args) -> int:
    t0 = time.time()
    files = [_check_file(path) for path in args.files]
    report = {
        "schema": CHECK_SCHEMA,
        "files": files,
        "passed": all(f["passed"] for f in files),
        "elapsed_seconds": round(time.time() - t0, 3),
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for f in files:
            if f["error"] is not None:
                print(f"{f['file']}: error: {f['error']['message']}")
                continue
            for a in f["assertions"]:
                mark = "ok" if a["passed"] else "FAIL"
                print(f"{f['file']}:{a['line']}:{a['col']}: {mark} "
                      f"[{a['detail']}] {a['text']}")
            n = len(f["assertions"])
            word = "passed" if f["passed"] else "FAILED"
            print(f"{f['file']}: {word} ({n} assertions)")
    if any(f["error"] is not None for f in files):
        return 2
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# suite

def _spot_check_signature() -> Signature:
    c_ty = TypeConst("C")
    return Signature(
        type_decls=(TypeDecl("C"),),
        term_decls=(TermDecl("c", Context(), c_ty),),
    )


_LOOP_TY = Id(TypeConst("C"), TermConst("c"), TermConst("c"))
_TWO_CELL_TY = Id(_LOOP_TY, Refl(TermConst("c")), Refl(TermConst("c")))


def _invert_cell(p: Term) -> Term:
    """Path inversion at the loop type, by identity elimination."""
    return JElim(Id(weaken(_LOOP_TY, 0, 3), Var(1), Var(2)), Refl(Var(0)),
                 Refl(TermConst("c")), Refl(TermConst("c")), p)


def _random_cell(rng: random.Random, depth: int) -> Term:
    """A random closed 2-cell built from reflexivity by elimination; it
    always normalizes back to ``refl (refl c)``."""
    cell: Term = Refl(Refl(TermConst("c")))
    for _ in range(depth):
        choice = rng.randrange(3)
        if choice == 0:
            cell = _invert_cell(cell)
        elif choice == 1:
            # a unit elimination that computes away on the canonical point
            cell = UnitElim(weaken(_TWO_CELL_TY, 0, 1), cell, Star())
        else:
            # transport along reflexivity at the two-cell type
            cell = JElim(weaken(_TWO_CELL_TY, 0, 3), weaken(cell, 0, 1),
                         Refl(TermConst("c")), Refl(TermConst("c")),
                         Refl(Refl(TermConst("c"))))
    return cell


def _conversion_spot_checks(seed: int, count: int) -> dict:
    """Seeded random pairs at a 2-cell identity type; the kernel must
    identify all inhabitants of such types."""
    rng = random.Random(seed)
    sig = _spot_check_signature()
    two_cell_ty = _TWO_CELL_TY
    failures = []
    for i in range(count):
        lhs = _random_cell(rng, rng.randrange(1, 4))
        rhs = _random_cell(rng, rng.randrange(1, 4))
        j = Judgement("term-eq", Context(), (lhs, rhs, two_cell_ty))
        if not judgement_holds(j, sig):
            failures.append({"index": i, "lhs": repr(lhs),
                             "rhs": repr(rhs)})
    return {"count": count, "passed": not failures, "failures": failures}


def cmd_suite(args) -> int:
    t0 = time.time()
    certs = gpdmodel.run_model_suite(args.max_base, args.max_fiber)
    spot = _conversion_spot_checks(args.seed, 64)
    passed = all(c.passed for c in certs) and spot["passed"]
    report = {
        "schema": SUITE_SCHEMA,
        "seed": args.seed,
        "max_base": args.max_base,
        "max_fiber": args.max_fiber,
        "instances": [c.to_json() for c in certs],
        "conversion_spot_checks": spot,
        "passed": passed,
        "elapsed_seconds": round(time.time() - t0, 3),
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for c in certs:
            word = "ok" if c.passed else "FAIL"
            print(f"{c.label}: {word} ({c.checked} clauses)")
            for name, rep in c.reports:
                if not rep.passed:
                    for fl in rep.failures:
                        print(f"  {name}: {fl.clause} at {fl.witness!r}")
        word = "ok" if spot["passed"] else "FAIL"
        print(f"conversion-spot-checks: {word} ({spot['count']} pairs)")
        print("suite " + ("passed" if passed else "FAILED"))
    return 0 if passed else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ml2",
        description="Type-check surface-language files and verify the "
                    "finite-groupoid model certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="check .ml2 files")
    chk.add_argument("files", nargs="+", metavar="FILE")
    chk.add_argument("--json", action="store_true",
                     help="emit a JSON report")
    chk.set_defaults(func=cmd_check)

    ste = sub.add_parser("suite", help="run the model verification suite")
    ste.add_argument("--max-base", type=int,
                     default=gpdmodel.MAX_BASE_OBJECTS,
                     help="largest base groupoid (object count)")
    ste.add_argument("--max-fiber", type=int,
                     default=gpdmodel.MAX_FIBER_OBJECTS,
                     help="largest fiber groupoid (object count)")
    ste.add_argument("--seed", type=int, default=0,
                     help="seed for the randomized conversion checks")
    ste.add_argument("--json", action="store_true",
                     help="emit a JSON report")
    ste.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
