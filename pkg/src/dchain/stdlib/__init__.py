"""The theorem corpus: `.dc` files loaded, checked and frozen into an Environment."""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, replace
from importlib import resources
from typing import Optional, Sequence

from .. import kernel
from ..chain import Chain, ChainError, ChainResult, Closing, Link, LinkKind, verify_chain
from ..kernel import FuelExhausted, KernelError
from ..surface import Axiom, Def, ParseError, SourceFile, Theorem, parse_file
from ..syntax import Context, Entry, Environment, Term, lambdas, pis


@dataclass(frozen=True)
class TheoremRecord:
    name: str
    statement: Term  # closed: Pi over the telescope
    chain: Chain  # elaborated, in the telescope's context
    anchor: str = ""
    source: str = ""
    kind: LinkKind = LinkKind.DEFEQ
    goal: Optional[Term] = None  # statement body, in the telescope's context


@dataclass(frozen=True)
class Verdict:
    name: str
    ok: bool
    index: Optional[int] = None  # failing link, when known
    reason: str = ""
    fuel_exhausted: bool = False

    def line(self) -> str:
        if self.ok:
            return f"OK {self.name}"
        index = "-" if self.index is None else str(self.index)
        return f"FAIL {self.name} {index} {self.reason}"


class TheoremFailure(Exception):
    def __init__(self, name: str, index: Optional[int], reason: str, source: str = "", line: int = 0):
        where = f"{source}:{line}: " if source else ""
        super().__init__(f"{where}theorem {name}: link {index}: {reason}")
        self.name = name
        self.index = index
        self.reason = reason
        self.source = source
        self.line = line


class DeclarationError(Exception):
    def __init__(self, name: str, reason: str, source: str = "", line: int = 0):
        super().__init__(f"{source}:{line}: {name}: {reason}")
        self.name = name
        self.reason = reason
        self.source = source
        self.line = line


def _manifest() -> dict:
    return json.loads(resources.files(__package__).joinpath("manifest.json").read_text("utf-8"))


def manifest_files() -> list[str]:
    return list(_manifest()["files"])


def exercise_files() -> list[str]:
    """Files that check on top of the corpus but are not part of it."""
    return list(_manifest().get("exercises", []))


def load_exercises(env: Environment, fuel=None) -> Environment:
    for name in exercise_files():
        env = extend_with(env, parse_file(read_source(name), env.names(), name), fuel)
    return env


def anchors() -> dict[str, str]:
    return dict(_manifest()["anchors"])


def rules() -> dict[str, list[str]]:
    """Map each quantifier rule of the logic to the theorems that state it."""
    return {k: list(v) for k, v in _manifest()["rules"].items()}


def read_source(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text("utf-8")


def elaborate_context(env: Environment, ctx: Context, fuel) -> Context:
    out = Context()
    for name, ty in ctx:
        out = out.extend(name, kernel.elaborate(env, out, ty, fuel))
    return out


def _elaborate_chain(env: Environment, chain: Chain, ctx: Context, fuel) -> Chain:
    def el(t):
        return None if t is None else kernel.elaborate(env, ctx, t, fuel)

    links = tuple(Link(l.kind, el(l.lower), el(l.upper), el(l.witness), l.justification) for l in chain.links)
    closing = None
    if chain.closing is not None:
        c = chain.closing
        closing = Closing(el(c.bottom), el(c.inhabitant), c.justification)
    return Chain(ctx, el(chain.goal), links, closing)


def prove(env: Environment, thm: Theorem, fuel=None, anchor: str = "", source: str = "") -> tuple[Entry, ChainResult]:
    """Verify a parsed theorem and build its environment entry.

    Raises TheoremFailure (or FuelExhausted) when the chain does not check."""
    fuel = kernel._fuel(fuel)
    try:
        ctx = elaborate_context(env, thm.telescope, fuel)
        kernel.check_context(env, ctx, fuel)
        statement = kernel.elaborate(env, ctx, thm.statement, fuel)
        kernel.check_type(env, ctx, statement, fuel)
        chain = _elaborate_chain(env, thm.chain, ctx, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise TheoremFailure(thm.name, -1, f"ill-formed statement: {exc.message}", source, thm.line) from exc
    result = _run_chain(env, thm.name, chain, statement, fuel, source, thm.line)
    record = TheoremRecord(
        thm.name, pis(list(ctx), statement), chain, anchor, source, result.kind, statement
    )
    entry = Entry(thm.name, record.statement, lambdas(list(ctx), result.witness), "theorem", record)
    return entry, result


def _run_chain(env, name, chain, statement, fuel, source="", line=0) -> ChainResult:
    try:
        result = verify_chain(env, chain, fuel)
    except ChainError as exc:
        raise TheoremFailure(name, exc.index, f"{exc.code}: {exc.message}", source, line) from exc
    try:
        kernel.check(env, chain.context, result.witness, statement, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise TheoremFailure(
            name, -1, f"chain proves a different statement: {exc.message}", source, line
        ) from exc
    return result


def extend_with(env: Environment, parsed: SourceFile, fuel=None, anchor_map: Optional[dict] = None) -> Environment:
    """Check every declaration of ``parsed`` in order and add it to ``env``.

    An integer ``fuel`` is a budget per declaration."""
    budget = fuel
    anchor_map = anchor_map or {}
    src = parsed.source
    empty = Context()
    for decl in parsed:
        fuel = kernel._fuel(budget)
        if isinstance(decl, Theorem):
            entry, _ = prove(env, decl, fuel, anchor_map.get(decl.name, ""), src)
        else:
            try:
                ty = kernel.elaborate(env, empty, decl.type, fuel)
                kernel.check_type(env, empty, ty, fuel)
                if isinstance(decl, Def):
                    body = kernel.elaborate(env, empty, decl.body, fuel)
                    kernel.check(env, empty, body, ty, fuel)
                    entry = Entry(decl.name, ty, body, "def")
                else:
                    entry = Entry(decl.name, ty, None, "axiom")
            except FuelExhausted:
                raise
            except KernelError as exc:
                raise DeclarationError(decl.name, exc.message, src, decl.line) from exc
        try:
            env = env.extend(entry)
        except ValueError as exc:
            raise DeclarationError(decl.name, str(exc), src, decl.line) from exc
    return env


@dataclass(frozen=True)
class FileReport:
    env: Environment  # the input environment plus every declaration that checked
    verdicts: tuple[Verdict, ...]  # theorems, and declarations that failed
    witnesses: tuple[tuple[str, Term], ...]  # closed composite witness per proved theorem


def check_declarations(env: Environment, parsed: SourceFile, fuel=None) -> FileReport:
    """Like extend_with, but a failing declaration is reported and skipped
    instead of aborting the file."""
    verdicts, witnesses = [], []
    for decl in parsed:
        single = SourceFile((decl,), parsed.source)
        try:
            env = extend_with(env, single, fuel)
        except TheoremFailure as exc:
            verdicts.append(Verdict(decl.name, False, exc.index, f"{parsed.source}:{exc.line}: {exc.reason}"))
            continue
        except DeclarationError as exc:
            verdicts.append(Verdict(decl.name, False, None, f"{parsed.source}:{exc.line}: {exc.reason}"))
            continue
        except FuelExhausted as exc:
            verdicts.append(Verdict(decl.name, False, None, f"fuel-exhausted: {exc.message}", True))
            continue
        if isinstance(decl, Theorem):
            entry = env.lookup(decl.name)
            verdicts.append(Verdict(decl.name, True))
            witnesses.append((decl.name, entry.body))
    return FileReport(env, tuple(verdicts), tuple(witnesses))


def load_text(text: str, env: Optional[Environment] = None, source: str = "<input>", fuel=None) -> Environment:
    env = env if env is not None else Environment()
    parsed = parse_file(text, env.names(), source)
    return extend_with(env, parsed, fuel)


@functools.lru_cache(maxsize=4)
def _load(fuel: int) -> Environment:
    env = Environment()
    amap = anchors()
    for name in manifest_files():
        parsed = parse_file(read_source(name), env.names(), name)
        env = extend_with(env, parsed, fuel, amap)
    return env


def load(fuel: int = kernel.DEFAULT_FUEL) -> Environment:
    """Check the whole corpus and return the frozen Environment."""
    return _load(fuel)


def verify_record(env: Environment, record: TheoremRecord, fuel=None) -> Verdict:
    fuel = kernel._fuel(fuel)
    try:
        result = verify_chain(env, record.chain, fuel)
        kernel.check(env, record.chain.context, result.witness, record.goal, fuel)
        closed = lambdas(list(record.chain.context), result.witness)
        kernel.check(env, Context(), closed, record.statement, fuel)
    except ChainError as exc:
        return Verdict(record.name, False, exc.index, f"{exc.code}: {exc.message}")
    except FuelExhausted as exc:
        return Verdict(record.name, False, None, f"fuel-exhausted: {exc.message}", True)
    except KernelError as exc:
        return Verdict(record.name, False, -1, f"statement-mismatch: {exc.message}")
    return Verdict(record.name, True)


def verify_all(env: Environment, fuel=None) -> list[Verdict]:
    """Re-verify every theorem of ``env`` in order; one verdict per theorem."""
    return [verify_record(env, e.record, fuel) for e in env.theorems()]


def replace_record(env: Environment, name: str, record: TheoremRecord) -> Environment:
    """A copy of ``env`` whose theorem ``name`` carries ``record`` instead."""
    out = Environment()
    for e in env:
        out = out.extend(replace(e, record=record) if e.name == name else e)
    return out


__all__ = [
    "TheoremRecord",
    "Verdict",
    "TheoremFailure",
    "DeclarationError",
    "load",
    "load_text",
    "extend_with",
    "check_declarations",
    "FileReport",
    "prove",
    "verify_all",
    "verify_record",
    "replace_record",
    "manifest_files",
    "exercise_files",
    "load_exercises",
    "anchors",
    "rules",
]
