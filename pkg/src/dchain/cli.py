"""Command line front end: check chain files, normalize and compare terms,
run the corpus, and search for canonical functions."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from . import doors, kernel, stdlib
from .kernel import FuelExhausted, KernelError
from .surface import ParseError, parse_file, parse_telescope, parse_term, print_term
from .syntax import Context, Environment

OK, FAILED, USAGE, FUEL = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with its own status
        raise _Usage(message)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=kernel.DEFAULT_FUEL, help="reduction steps per declaration")
    common.add_argument("--no-stdlib", action="store_true", help="start from an empty environment")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--ctx", default="", help="telescope for open terms, e.g. '(A : U0) (a : A)'")

    p = _Parser(prog="dchain", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", parents=[common], help="verify the theorems of .dc files")
    c.add_argument("files", nargs="+")
    c.add_argument("--print-witness", action="store_true", help="print each composite witness")
    n = sub.add_parser("normalize", parents=[common], help="print the normal form of a term")
    n.add_argument("-e", "--expr", required=True)
    e = sub.add_parser("eq", parents=[common], help="decide definitional equality of two terms")
    e.add_argument("left")
    e.add_argument("right")
    d = sub.add_parser("doors", parents=[common], help="search a canonical function between two types")
    d.add_argument("source")
    d.add_argument("target")
    d.add_argument("--depth", type=int, default=doors.DEFAULT_DEPTH)
    s = sub.add_parser("stdlib", parents=[common], help="re-verify every corpus theorem")
    s.add_argument("--print-witness", action="store_true")
    return p


def _environment(args) -> Environment:
    return Environment() if args.no_stdlib else stdlib.load(args.fuel)


def _scope(env: Environment, args) -> tuple[Context, list[str]]:
    ctx = parse_telescope(args.ctx, env.names()) if args.ctx.strip() else Context()
    ctx = stdlib.elaborate_context(env, ctx, args.fuel)
    kernel.check_context(env, ctx, args.fuel)
    return ctx, ctx.names()


def _term(env: Environment, ctx: Context, text: str, fuel: int):
    t = parse_term(text, ctx.names(), env.names())
    t = kernel.elaborate(env, ctx, t, fuel)
    kernel.infer(env, ctx, t, fuel)
    return t


def _verdict_json(v: stdlib.Verdict) -> dict:
    return {"name": v.name, "ok": v.ok, "index": v.index, "reason": v.reason, "fuel_exhausted": v.fuel_exhausted}


def _status(verdicts: Sequence[stdlib.Verdict]) -> int:
    if all(v.ok for v in verdicts):
        return OK
    if any(v.fuel_exhausted for v in verdicts):
        return FUEL
    return FAILED


def _check(args, out: TextIO) -> int:
    env = _environment(args)
    verdicts, witnesses = [], []
    for path in args.files:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        parsed = parse_file(text, env.names(), path)
        report = stdlib.check_declarations(env, parsed, args.fuel)
        env = report.env
        verdicts += report.verdicts
        witnesses += report.witnesses
    shown = dict(witnesses) if args.print_witness else {}
    if args.json:
        rows = []
        for v in verdicts:
            row = _verdict_json(v)
            if v.name in shown:
                row["witness"] = print_term(shown[v.name])
            rows.append(row)
        json.dump({"command": "check", "ok": _status(verdicts) == OK, "results": rows}, out, indent=2)
        out.write("\n")
    else:
        for v in verdicts:
            out.write(v.line() + "\n")
            if v.name in shown:
                out.write(f"  {print_term(shown[v.name])}\n")
    return _status(verdicts)


def _stdlib(args, out: TextIO) -> int:
    env = stdlib.load(args.fuel)  # the corpus is the subject here, so --no-stdlib is moot
    verdicts = stdlib.verify_all(env, args.fuel)
    if args.json:
        rows = [_verdict_json(v) for v in verdicts]
        json.dump({"command": "stdlib", "ok": _status(verdicts) == OK, "results": rows}, out, indent=2)
        out.write("\n")
    else:
        for v in verdicts:
            out.write(v.line() + "\n")
            if args.print_witness and v.ok:
                out.write(f"  {print_term(env.lookup(v.name).body)}\n")
    return _status(verdicts)


def _normalize(args, out: TextIO) -> int:
    env = _environment(args)
    ctx, names = _scope(env, args)
    t = _term(env, ctx, args.expr, args.fuel)
    nf = print_term(kernel.normalize(env, ctx, t, args.fuel), names)
    out.write((json.dumps({"command": "normalize", "term": nf}) if args.json else nf) + "\n")
    return OK


def _eq(args, out: TextIO) -> int:
    env = _environment(args)
    ctx, _ = _scope(env, args)
    a = _term(env, ctx, args.left, args.fuel)
    b = _term(env, ctx, args.right, args.fuel)
    same = kernel.def_eq(env, ctx, a, b, args.fuel)
    text = "true" if same else "false"
    out.write((json.dumps({"command": "eq", "equal": same}) if args.json else text) + "\n")
    return OK if same else FAILED


def _doors(args, out: TextIO) -> int:
    env = _environment(args)
    ctx, names = _scope(env, args)
    source = _term(env, ctx, args.source, args.fuel)
    target = _term(env, ctx, args.target, args.fuel)
    found = doors.synthesize(env, ctx, source, target, args.depth, args.fuel)
    text = None if found is None else print_term(found, names)
    if args.json:
        out.write(json.dumps({"command": "doors", "candidate": text}) + "\n")
    else:
        out.write(("no candidate" if text is None else text) + "\n")
    return OK


_COMMANDS = {"check": _check, "stdlib": _stdlib, "normalize": _normalize, "eq": _eq, "doors": _doors}


def run(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        args = _parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"dchain: {exc}\n")
        return USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except FuelExhausted as exc:
        err.write(f"dchain: fuel-exhausted: {exc.message}\n")
        return FUEL
    except (stdlib.TheoremFailure, stdlib.DeclarationError) as exc:
        err.write(f"dchain: {exc}\n")
        return FAILED
    except ParseError as exc:
        err.write(f"dchain: parse error: {exc}\n")
        return USAGE
    except KernelError as exc:
        err.write(f"dchain: ill-typed input: {exc.message}\n")
        return USAGE
    except OSError as exc:
        err.write(f"dchain: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
