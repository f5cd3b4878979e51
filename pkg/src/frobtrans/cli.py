"""Command-line entry point: ``frobtrans <group> <command> ...``.

Exit status is 0 for PASS, 1 for FAIL and 2 for ERROR.  Every run prints a
key=value report (also written to ``--out`` when given) naming the field
modulus in use.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import bent as bt
from . import io
from .errors import FrobError, ParseError
from .field import Field
from .perms import (
    LinearizedMap,
    PermTable,
    build_perm_frobenius,
    check_An,
    is_permutation,
    verify_th_var2,
)
from .repro import EXAMPLES, RunReport, cmd_repro, run_open_problem
from .translators import FunctionTable, TranslatorWitness, find_translators


def _field_for(args, *table_paths: str) -> Field:
    """--field if given, else the default modulus for the first table's header."""
    if args.field:
        return io.load_field(args.field)
    for path in table_paths:
        head = Path(path).read_text().lstrip().split("\n", 1)[0]
        m = re.search(r"field=(\d+)\^(\d+)", head)
        if m:
            return Field(int(m.group(1)), int(m.group(2)))
    raise ParseError("no --field given and none can be read from the inputs")


def _linmap(F: Field, text: str | None, k: int) -> LinearizedMap:
    if text is None:
        return LinearizedMap.identity(F, k)
    lambdas = io.parse_element_list(F, text)
    if F.n % len(lambdas):
        raise ParseError(f"{len(lambdas)} coefficients do not divide n={F.n}")
    return LinearizedMap(F, F.n // len(lambdas), lambdas)


def _save(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# --- commands ------------------------------------------------------------------------

def cmd_field_show(args, rep: RunReport) -> None:
    F = io.load_field(args.field or "2,8")
    rep.use_field(F)
    rep.counters.update(order=F.q, alpha=F.format(F.alpha))
    print(io.format_field(F), end="")


def cmd_translators_find(args, rep: RunReport) -> None:
    F = _field_for(args, args.function)
    rep.use_field(F)
    f = io.load_table(F, args.function)
    rep.inputs["function"] = args.function
    ws = find_translators(f)
    for w in ws:
        print(f"(gamma={io.format_exp(F, w.gamma)}, i={w.i}, b={io.format_exp(F, w.b)})")
    rep.counters.update(elements_scanned=F.q - 1, witnesses=len(ws),
                        gammas=len({w.gamma for w in ws}))
    rep.check(True, f"{len(ws)} witnesses")


def cmd_perm_build_frobenius(args, rep: RunReport) -> None:
    F = _field_for(args, args.f)
    rep.use_field(F)
    f = io.load_table(F, args.f)
    h = io.load_table(F, args.h)
    L = _linmap(F, args.L, f.codomain_k)
    gamma = io.parse_element(F, args.gamma)
    b = F.sub(int(f(gamma)), int(f(0)))
    w = TranslatorWitness(gamma, args.i % f.codomain_k, b)
    G = build_perm_frobenius(L, w, h, f)
    rep.inputs.update(gamma=args.gamma, i=args.i, b=io.format_exp(F, b))
    rep.check(G.certified, "G permutes the field")
    _save(args.save, io.format_table(FunctionTable(F, F.n, G.values)))


def cmd_perm_verify(args, rep: RunReport) -> None:
    F = _field_for(args, args.table)
    rep.use_field(F)
    t = io.load_table(F, args.table)
    rep.inputs["table"] = args.table
    rep.check(is_permutation(t), "table is a bijection")


def cmd_perm_check_an(args, rep: RunReport) -> None:
    F = _field_for(args, *args.tables)
    rep.use_field(F)
    phis = [PermTable(F, io.load_table(F, p).values) for p in args.tables]
    rep.check(check_An(*phis), "condition (A_n)")


def cmd_perm_var2(args, rep: RunReport) -> None:
    F = io.load_field(args.field or "3,2")
    rep.use_field(F)
    L = _linmap(F, args.L, F.n // 2)
    delta = io.parse_element(F, args.delta)
    res = verify_th_var2(L, args.s, delta)
    rep.inputs.update(s=args.s, delta=args.delta)
    rep.counters.update(F_permutes=res.F_permutes, G_permutes_S=res.G_permutes)
    rep.check(res.equivalence, "F permutes the field iff G permutes S")


def cmd_bent_verify(args, rep: RunReport) -> None:
    f = io.load_boolean(args.function)
    rep.inputs["function"] = args.function
    rep.field = "none (Boolean function)"
    w = np.abs(bt.walsh_transform(f).coefficients)
    rep.counters.update(m=f.m, spectrum_min=int(w.min()), spectrum_max=int(w.max()))
    rep.check(bt.is_bent(f), "bent")


def cmd_bent_dual(args, rep: RunReport) -> None:
    f = io.load_boolean(args.function)
    rep.field = "none (Boolean function)"
    cert = bt.certify_bent(f)
    text = io.format_boolean(cert.dual)
    _save(args.save, text)
    if not args.save:
        print(text, end="")
    rep.check(True, "dual computed")


def cmd_bent_con1(args, rep: RunReport) -> None:
    F = _field_for(args, args.f)
    rep.use_field(F)
    f = io.load_table(F, args.f)
    g = io.load_table(F, args.g)
    gammas = io.parse_element_list(F, args.gammas)
    L = _linmap(F, args.L, f.codomain_k)
    cert, closed = bt.bent_con1(L, f, g, gammas, args.i)
    rep.inputs.update(gammas=args.gammas, i=args.i)
    rep.counters.update(m=cert.function.m, spectrum_min=cert.spectrum_extremes[0],
                        spectrum_max=cert.spectrum_extremes[1])
    rep.check(cert.dual == closed, "H bent, spectral dual equals the closed form")


def cmd_bent_open_problem(args, rep: RunReport) -> None:
    F = io.load_field(args.field or "2,6")
    rep.use_field(F)
    shifts = io.parse_element_list(F, args.shifts) if args.shifts else None
    if shifts is not None and len(shifts) != 3:
        raise ParseError("--shifts needs three elements")
    rep.inputs["shifts"] = args.shifts or "a^1,a^2,a^3"
    run_open_problem(rep, F, shifts)


def cmd_repro_run(args, rep: RunReport) -> None:
    params = {"ell": args.ell} if args.ell is not None and args.example == "ex1" else {}
    cmd_repro(args.example, seed=args.seed, report=rep, **params)


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec file or inline p,n[,modulus]")
    common.add_argument("--out", help="write the key=value report here")
    common.add_argument("--threads", type=int, default=1, help="parallelism hint (unused)")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="frobtrans", description=__doc__.split("\n")[0])
    groups = ap.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    fld = groups.add_parser("field").add_subparsers(dest="cmd", required=True)
    sub(fld, "show", cmd_field_show)

    tr = groups.add_parser("translators").add_subparsers(dest="cmd", required=True)
    sub(tr, "find", cmd_translators_find).add_argument("--function", required=True)

    pm = groups.add_parser("perm").add_subparsers(dest="cmd", required=True)
    p = sub(pm, "build-frobenius", cmd_perm_build_frobenius)
    p.add_argument("--L", help="linearized coefficients lambda_0;lambda_1;...")
    p.add_argument("--gamma", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--save", help="write G as a table")
    sub(pm, "verify", cmd_perm_verify).add_argument("table")
    sub(pm, "check-an", cmd_perm_check_an).add_argument("tables", nargs=3)
    p = sub(pm, "var2", cmd_perm_var2)
    p.add_argument("--L")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--delta", required=True)

    bn = groups.add_parser("bent").add_subparsers(dest="cmd", required=True)
    sub(bn, "verify", cmd_bent_verify).add_argument("function")
    p = sub(bn, "dual", cmd_bent_dual)
    p.add_argument("function")
    p.add_argument("--save")
    p = sub(bn, "con1", cmd_bent_con1)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--gammas", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--L")
    sub(bn, "open-problem", cmd_bent_open_problem).add_argument("--shifts")

    p = sub(groups, "repro", cmd_repro_run)
    p.add_argument("example", help=", ".join(EXAMPLES))
    p.add_argument("--ell", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    argv = sys.argv[1:] if argv is None else argv
    rep = RunReport(" ".join(argv))
    start = time.perf_counter()
    try:
        args.fn(args, rep)
    except (FrobError, OSError, ValueError) as exc:
        rep.verdict = "ERROR"
        rep.notes.append(f"{type(exc).__name__}: {exc}")
    rep.duration = time.perf_counter() - start
    rep.command = " ".join(argv)
    text = rep.to_text()
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
