"""Concrete syntax: lexer, recursive-descent parser and pretty-printer.

Precedence from loosest to tightest: lambda (extends right), ``->`` (right),
``+`` (right), ``*`` (right), ``=`` and ``~=`` (non-associative), application,
atoms.  ``(x : A) -> B`` and ``(x : A) * B`` bind ``x`` in ``B``.

Inside ``proof ... qed`` blocks a witness term ends at its justification
string or at the end of its line; type lines may span several lines and end
at the next link marker.  A ``~=`` that starts a line is a link marker.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .chain import Chain, Closing, Link, LinkKind
from .syntax import (
    App,
    BasedIdInd,
    Const,
    Context,
    Empty,
    EmptyInd,
    Id,
    IdInd,
    Inl,
    Inr,
    Lambda,
    Nat,
    NatInd,
    Pair,
    Pi,
    Refl,
    Sigma,
    SigmaInd,
    Star,
    Succ,
    Sum,
    SumInd,
    Term,
    Unit,
    UnitInd,
    Universe,
    Var,
    Zero,
    constants,
    mentions_var0,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.source = source


class UnboundIdentifier(ParseError):
    pass


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # ident | num | string | sym | eof
    text: str
    line: int
    col: int
    newline: bool  # first token on its line


ELIMINATORS = ("sigma", "sum", "nat", "id", "based", "empty", "unit")
SYMBOLS = (":=", "::", "->", "<-", "==", "~=", "(", ")", "[", "]", ",", ":", ".", "\\", "*", "+", "=")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NUM = re.compile(r"[0-9]+")
_UNIVERSE = re.compile(r"U([0-9]+)")

NULLARY = {"N": Nat(), "Unit": Unit(), "Empty": Empty(), "zero": Zero(), "star": Star()}
KEYWORDS = (
    set(NULLARY)
    | {"succ", "inl", "inr", "Id", "refl", "def", "axiom", "theorem", "proof", "qed"}
    | {f"{e}-ind" for e in ELIMINATORS}
)


def is_reserved(name: str) -> bool:
    return name in KEYWORDS or _UNIVERSE.fullmatch(name) is not None


def tokenize(text: str, source: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    newline = True
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col, newline = i + 1, line + 1, 1, True
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError("unterminated string", line, start_col, source)
                j += 1
            if j >= n:
                raise ParseError("unterminated string", line, start_col, source)
            tokens.append(Token("string", text[i + 1 : j], line, start_col, newline))
            col += j + 1 - i
            i = j + 1
            newline = False
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            end = m.end()
            if word in ELIMINATORS and text.startswith("-ind", end) and not _continues_ident(text, end + 4):
                word += "-ind"
                end += 4
            tokens.append(Token("ident", word, line, start_col, newline))
            col += end - i
            i = end
            newline = False
            continue
        m = _NUM.match(text, i)
        if m:
            tokens.append(Token("num", m.group(), line, start_col, newline))
            col += m.end() - i
            i = m.end()
            newline = False
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("sym", sym, line, start_col, newline))
                i += len(sym)
                col += len(sym)
                newline = False
                break
        else:
            raise ParseError(f"unexpected character {c!r}", line, col, source)
    tokens.append(Token("eof", "", line, col, True))
    return tokens


def _continues_ident(text: str, i: int) -> bool:
    return i < len(text) and (text[i].isalnum() or text[i] in "_'")


# ---------------------------------------------------------------------------
# declarations


@dataclass(frozen=True)
class Def:
    name: str
    type: Term
    body: Term
    line: int = 0


@dataclass(frozen=True)
class Axiom:
    name: str
    type: Term
    line: int = 0


@dataclass(frozen=True)
class Theorem:
    name: str
    telescope: Context
    statement: Term  # the type after the colon, in the telescope's scope
    chain: Chain
    line: int = 0


Decl = Union[Def, Axiom, Theorem]


@dataclass(frozen=True)
class SourceFile:
    declarations: tuple[Decl, ...] = ()
    source: str = "<input>"

    def __iter__(self):
        return iter(self.declarations)

    def __len__(self) -> int:
        return len(self.declarations)


# ---------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, text: str, known: Optional[Iterable[str]] = None, source: str = "<input>"):
        self.source = source
        self.tokens = tokenize(text, source)
        self.pos = 0
        self.known: Optional[set[str]] = None if known is None else set(known)
        self.scope: list[Optional[str]] = []
        self.depth = 0  # parenthesis nesting
        self.line_mode = False  # terms end at a newline outside parentheses
        self.line_indent = 0  # ...unless the new line is indented past this column
        self.proof_mode = False  # a `~=` starting a line is a marker

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        return t

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, self.source)

    def is_sym(self, text: str, tok: Optional[Token] = None) -> bool:
        tok = tok or self.tok
        return tok.kind == "sym" and tok.text == text

    def is_word(self, text: str, tok: Optional[Token] = None) -> bool:
        tok = tok or self.tok
        return tok.kind == "ident" and tok.text == text

    def expect_sym(self, text: str) -> Token:
        if not self.is_sym(text):
            raise self.error(f"expected {text!r}, found {self._describe(self.tok)}")
        return self.advance()

    def expect_word(self, text: str) -> Token:
        if not self.is_word(text):
            raise self.error(f"expected {text!r}, found {self._describe(self.tok)}")
        return self.advance()

    def expect_name(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or (is_reserved(tok.text) and tok.text != "_"):
            raise self.error(f"expected a name, found {self._describe(tok)}")
        self.advance()
        return tok.text

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def stopped(self) -> bool:
        """True when a line-terminated term should end before the current token."""
        return self.line_mode and self.depth == 0 and self.tok.newline and self.tok.col <= self.line_indent

    # -- scope -------------------------------------------------------------

    def resolve(self, tok: Token) -> Term:
        name = tok.text
        for i, bound in enumerate(reversed(self.scope)):
            if bound == name:
                return Var(i)
        if self.known is not None and name not in self.known:
            raise UnboundIdentifier(f"unbound identifier {name!r}", tok.line, tok.col, self.source)
        return Const(name)

    def bind(self, names: Sequence[Optional[str]]) -> None:
        self.scope.extend(names)

    def unbind(self, count: int) -> None:
        if count:
            del self.scope[-count:]

    # -- terms -------------------------------------------------------------

    def parse_term(self) -> Term:
        if self.is_sym("\\"):
            return self.parse_lambda()
        return self.parse_arrow()

    def parse_lambda(self) -> Term:
        self.expect_sym("\\")
        if self.is_sym("(") and self._group_ahead():
            groups = self.parse_groups()
        else:
            names = [self.expect_name()]
            while not self.is_sym(":"):
                names.append(self.expect_name())
            self.expect_sym(":")
            groups = [(names, self._group_types(names))]
        self.expect_sym(".")
        body = self.parse_term()
        self.unbind(sum(len(ns) for ns, _ in groups))
        return _wrap(Lambda, groups, body)

    def _group_ahead(self) -> bool:
        """Is the current `(` the start of a binder group `(x y : T)`?"""
        k = 1
        while self.peek(k).kind == "ident" and (not is_reserved(self.peek(k).text) or self.peek(k).text == "_"):
            k += 1
        return k > 1 and self.is_sym(":", self.peek(k))

    def _group_types(self, names: list[str]) -> list[Term]:
        """Parse the shared type of ``names``, once per name so that each copy
        sees the names bound before it.  Binds every name."""
        start = self.pos
        types = []
        for name in names:
            self.pos = start
            types.append(self.parse_term())
            self.bind([name])
        return types

    def parse_groups(self) -> list[tuple[list[str], list[Term]]]:
        """Parse `(x y : A) (z : B x)`; binds every name as it goes."""
        groups = []
        while self.is_sym("(") and self._group_ahead():
            self.advance()
            self.depth += 1
            names = []
            while not self.is_sym(":"):
                names.append(self.expect_name())
            self.expect_sym(":")
            saved_line = self.line_mode
            self.line_mode = False
            types = self._group_types(names)
            self.line_mode = saved_line
            self.depth -= 1
            self.expect_sym(")")
            groups.append((names, types))
        return groups

    def parse_arrow(self) -> Term:
        if self.is_sym("(") and self._group_ahead():
            return self.parse_dependent()
        lhs = self.parse_sum()
        if self.is_sym("->") and not self.stopped():
            self.advance()
            self.bind([None])
            cod = self.parse_term()
            self.unbind(1)
            return Pi(lhs, cod)
        return lhs

    def parse_dependent(self) -> Term:
        start = self.tok
        groups = self.parse_groups()
        count = sum(len(ns) for ns, _ in groups)
        if self.is_sym("->"):
            self.advance()
            body = self.parse_term()
            self.unbind(count)
            return _wrap(Pi, groups, body)
        if self.is_sym("*"):
            self.advance()
            body = self.parse_prod()
            self.unbind(count)
            result = _wrap(Sigma, groups, body)
            return self._continue_binary(result)
        raise self.error("expected '->' or '*' after a binder group", start)

    def _continue_binary(self, lhs: Term) -> Term:
        # a dependent pair type may still be followed by `+` or `->`
        if self.is_sym("+") and not self.stopped():
            self.advance()
            lhs = Sum(lhs, self.parse_sum())
        if self.is_sym("->") and not self.stopped():
            self.advance()
            self.bind([None])
            cod = self.parse_term()
            self.unbind(1)
            lhs = Pi(lhs, cod)
        return lhs

    def parse_sum(self) -> Term:
        lhs = self.parse_prod()
        if self.is_sym("+") and not self.stopped():
            self.advance()
            return Sum(lhs, self.parse_sum())
        return lhs

    def parse_prod(self) -> Term:
        if self.is_sym("(") and self._group_ahead():
            groups = self.parse_groups()
            count = sum(len(ns) for ns, _ in groups)
            if not self.is_sym("*"):
                raise self.error("expected '*' after a binder group")
            self.advance()
            body = self.parse_prod()
            self.unbind(count)
            return _wrap(Sigma, groups, body)
        lhs = self.parse_eq()
        if self.is_sym("*") and not self.stopped():
            self.advance()
            self.bind([None])
            rhs = self.parse_prod()
            self.unbind(1)
            return Sigma(lhs, rhs)
        return lhs

    def parse_eq(self) -> Term:
        lhs = self.parse_app()
        if self.stopped():
            return lhs
        if self.is_sym("="):
            self.advance()
            return Id(None, lhs, self.parse_app())
        if self.is_sym("~=") and not (self.proof_mode and self.depth == 0 and self.tok.newline):
            self.advance()
            return App(App(Const("equiv"), lhs), self.parse_app())
        return lhs

    def parse_app(self) -> Term:
        if self.is_sym("\\"):
            return self.parse_lambda()
        head = self.parse_head()
        while self.starts_atom() and not self.stopped():
            head = App(head, self.parse_atom())
        return head

    def starts_atom(self) -> bool:
        tok = self.tok
        if tok.kind == "num":
            return True
        if tok.kind == "sym":
            return tok.text == "("
        if tok.kind == "ident":
            return tok.text != "_" and (tok.text in NULLARY or not is_reserved(tok.text) or bool(_UNIVERSE.fullmatch(tok.text)))
        return False

    def parse_head(self) -> Term:
        tok = self.tok
        if tok.kind != "ident":
            return self.parse_atom()
        word = tok.text
        a = self.parse_atom
        if word == "succ":
            self.advance()
            return Succ(a())
        if word in ("inl", "inr"):
            self.advance()
            self.expect_sym("[")
            self.depth += 1
            other = self.parse_term()
            self.depth -= 1
            self.expect_sym("]")
            value = a()
            return Inl(value, other) if word == "inl" else Inr(value, other)
        if word == "Id":
            self.advance()
            return Id(a(), a(), a())
        if word == "refl":
            self.advance()
            return Refl(a(), a())
        if word == "sigma-ind":
            self.advance()
            return SigmaInd(a(), a(), a())
        if word == "sum-ind":
            self.advance()
            return SumInd(a(), a(), a(), a())
        if word == "nat-ind":
            self.advance()
            return NatInd(a(), a(), a())
        if word == "id-ind":
            self.advance()
            return IdInd(a(), a(), a(), a(), a())
        if word == "based-ind":
            self.advance()
            return BasedIdInd(a(), a(), a(), a(), a(), a())
        if word == "empty-ind":
            self.advance()
            return EmptyInd(a(), a())
        if word == "unit-ind":
            self.advance()
            return UnitInd(a(), a(), a())
        return self.parse_atom()

    def parse_atom(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            t: Term = Zero()
            for _ in range(int(tok.text)):
                t = Succ(t)
            return t
        if tok.kind == "ident":
            word = tok.text
            if word in NULLARY:
                self.advance()
                return NULLARY[word]
            m = _UNIVERSE.fullmatch(word)
            if m:
                self.advance()
                return Universe(int(m.group(1)))
            if word == "_" or is_reserved(word):
                raise self.error(f"unexpected {word!r}")
            self.advance()
            return self.resolve(tok)
        if self.is_sym("("):
            self.advance()
            self.depth += 1
            items = [self.parse_term()]
            while self.is_sym(","):
                self.advance()
                items.append(self.parse_term())
            self.depth -= 1
            self.expect_sym(")")
            result = items[-1]
            for item in reversed(items[:-1]):
                result = Pair(item, result)
            return result
        raise self.error(f"expected a term, found {self._describe(tok)}")

    # -- files -------------------------------------------------------------

    def parse_file(self) -> SourceFile:
        decls: list[Decl] = []
        while self.tok.kind != "eof":
            tok = self.tok
            if self.is_word("def"):
                decl: Decl = self.parse_def()
            elif self.is_word("axiom"):
                decl = self.parse_axiom()
            elif self.is_word("theorem"):
                decl = self.parse_theorem()
            else:
                raise self.error(f"expected a declaration, found {self._describe(tok)}")
            if self.known is not None:
                if decl.name in self.known:
                    raise ParseError(f"{decl.name!r} is already defined", tok.line, tok.col, self.source)
                self.known.add(decl.name)
            decls.append(decl)
        return SourceFile(tuple(decls), self.source)

    def parse_def(self) -> Def:
        line = self.expect_word("def").line
        name = self.expect_name()
        self.expect_sym(":")
        ty = self.parse_term()
        self.expect_sym(":=")
        body = self.parse_term()
        return Def(name, ty, body, line)

    def parse_axiom(self) -> Axiom:
        line = self.expect_word("axiom").line
        name = self.expect_name()
        self.expect_sym(":")
        return Axiom(name, self.parse_term(), line)

    def parse_theorem(self) -> Theorem:
        line = self.expect_word("theorem").line
        name = self.expect_name()
        groups = self.parse_groups() if self.is_sym("(") else []
        entries = []
        for names, types in groups:
            entries.extend(zip(names, types))
        telescope = Context(tuple(entries))
        self.expect_sym(":")
        statement = self.parse_term()
        self.expect_word("proof")
        chain = self.parse_chain(telescope)
        self.expect_word("qed")
        self.unbind(len(entries))
        return Theorem(name, telescope, statement, chain, line)

    def parse_chain(self, ctx: Context) -> Chain:
        self.proof_mode = True
        saved_indent = self.line_indent
        self.line_indent = self.tok.col
        try:
            types = [self._chain_type()]
            markers: list[tuple[LinkKind, Optional[Term], str]] = []
            closing = None
            while True:
                if self.is_sym("<-") or self.is_sym("~="):
                    kind = LinkKind.CONSEQUENCE if self.tok.text == "<-" else LinkKind.EQUIV
                    self.advance()
                    witness = self._line_term()
                    markers.append((kind, witness, self._justification()))
                    types.append(self._chain_type())
                elif self.is_sym("=="):
                    self.advance()
                    markers.append((LinkKind.DEFEQ, None, self._justification()))
                    types.append(self._chain_type())
                elif self.is_sym("::"):
                    self.advance()
                    inhabitant = self._line_term()
                    closing = Closing(types[-1], inhabitant, self._justification())
                    break
                elif self.is_word("qed"):
                    break
                else:
                    raise self.error(f"expected a link marker or 'qed', found {self._describe(self.tok)}")
        finally:
            self.proof_mode = False
            self.line_indent = saved_indent
        links = tuple(
            Link(kind, types[i + 1], types[i], witness, just) for i, (kind, witness, just) in enumerate(markers)
        )
        return Chain(ctx, types[0], links, closing)

    def _chain_type(self) -> Term:
        return self.parse_term()

    def _line_term(self) -> Term:
        saved = self.line_mode
        self.line_mode = True
        try:
            if self.tok.newline:
                raise self.error("a witness must start on the marker's line")
            return self.parse_term()
        finally:
            self.line_mode = saved

    def _justification(self) -> str:
        if self.tok.kind == "string" and not self.tok.newline:
            return self.advance().text
        return ""


def _wrap(ctor, groups, body: Term) -> Term:
    for _, types in reversed(groups):
        for ty in reversed(types):
            body = ctor(ty, body)
    return body


def parse_term(text: str, names: Sequence[str] = (), known: Optional[Iterable[str]] = None) -> Term:
    """Parse a closed-or-open term.  ``names`` are context variables (outermost
    first); free identifiers become constants, or an error when ``known`` is
    given and does not contain them."""
    p = Parser(text, known)
    p.bind(list(names))
    t = p.parse_term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p._describe(p.tok)} after term")
    return t


def parse_file(text: str, known: Optional[Iterable[str]] = (), source: str = "<input>") -> SourceFile:
    return Parser(text, known, source).parse_file()


def parse_telescope(text: str, known: Optional[Iterable[str]] = None) -> Context:
    """Parse `(x : A) (y z : B x)` into a Context."""
    p = Parser(text, known)
    groups = p.parse_groups()
    if p.tok.kind != "eof":
        raise p.error("expected a telescope of binder groups")
    entries = []
    for names, types in groups:
        entries.extend(zip(names, types))
    return Context(tuple(entries))


# ---------------------------------------------------------------------------
# printer

# precedence levels
LAMBDA, ARROW, SUM, PROD, EQ, APP, ATOM = range(7)


class Printer:
    def __init__(self, avoid: set[str]):
        self.avoid = avoid

    def fresh(self, depth: int, scope: list[Optional[str]]) -> str:
        name = f"x{depth}"
        while name in self.avoid or name in scope:
            name += "'"
        return name

    def show(self, t: Term, scope: list[Optional[str]], prec: int) -> str:
        s, level = self.render(t, scope)
        return f"({s})" if level < prec else s

    def render(self, t: Term, scope: list[Optional[str]]) -> tuple[str, int]:
        show = self.show
        if isinstance(t, Var):
            if t.index < len(scope):
                name = scope[len(scope) - 1 - t.index]
                if name is not None:
                    return name, ATOM
            return f"#{t.index}", ATOM
        if isinstance(t, Const):
            return t.name, ATOM
        if isinstance(t, Universe):
            return f"U{t.level}", ATOM
        if isinstance(t, Nat):
            return "N", ATOM
        if isinstance(t, Unit):
            return "Unit", ATOM
        if isinstance(t, Empty):
            return "Empty", ATOM
        if isinstance(t, Zero):
            return "zero", ATOM
        if isinstance(t, Star):
            return "star", ATOM
        if isinstance(t, Lambda):
            x = self.fresh(len(scope), scope)
            dom = show(t.domain, scope, ARROW)
            return f"\\{x}:{dom}. {show(t.body, scope + [x], LAMBDA)}", LAMBDA
        if isinstance(t, Pi):
            if mentions_var0(t.codomain):
                x = self.fresh(len(scope), scope)
                return f"({x} : {show(t.domain, scope, LAMBDA)}) -> {show(t.codomain, scope + [x], LAMBDA)}", LAMBDA
            return f"{show(t.domain, scope, SUM)} -> {show(t.codomain, scope + [None], ARROW)}", ARROW
        if isinstance(t, Sigma):
            if mentions_var0(t.codomain):
                x = self.fresh(len(scope), scope)
                return f"({x} : {show(t.domain, scope, LAMBDA)}) * {show(t.codomain, scope + [x], PROD)}", PROD
            return f"{show(t.domain, scope, EQ)} * {show(t.codomain, scope + [None], PROD)}", PROD
        if isinstance(t, Sum):
            return f"{show(t.left, scope, PROD)} + {show(t.right, scope, SUM)}", SUM
        if isinstance(t, Pair):
            return f"({show(t.first, scope, LAMBDA)} , {show(t.second, scope, LAMBDA)})", ATOM
        if isinstance(t, App):
            return f"{show(t.fn, scope, APP)} {show(t.arg, scope, ATOM)}", APP
        if isinstance(t, Id) and t.type is None:
            return f"{show(t.lhs, scope, APP)} = {show(t.rhs, scope, APP)}", EQ
        if isinstance(t, Inl):
            return f"inl[{show(t.right, scope, LAMBDA)}] {show(t.value, scope, ATOM)}", APP
        if isinstance(t, Inr):
            return f"inr[{show(t.left, scope, LAMBDA)}] {show(t.value, scope, ATOM)}", APP
        head, args = _keyword_form(t)
        return " ".join([head] + [show(a, scope, ATOM) for a in args]), APP


def _keyword_form(t: Term) -> tuple[str, list[Term]]:
    if isinstance(t, Succ):
        return "succ", [t.pred]
    if isinstance(t, Id):
        return "Id", [t.type, t.lhs, t.rhs]
    if isinstance(t, Refl):
        return "refl", [t.type, t.point]
    if isinstance(t, SigmaInd):
        return "sigma-ind", [t.motive, t.handler, t.scrutinee]
    if isinstance(t, SumInd):
        return "sum-ind", [t.motive, t.on_left, t.on_right, t.scrutinee]
    if isinstance(t, NatInd):
        return "nat-ind", [t.motive, t.handler, t.scrutinee]
    if isinstance(t, IdInd):
        return "id-ind", [t.motive, t.handler, t.lhs, t.rhs, t.path]
    if isinstance(t, BasedIdInd):
        return "based-ind", [t.type, t.base, t.motive, t.handler, t.endpoint, t.path]
    if isinstance(t, EmptyInd):
        return "empty-ind", [t.motive, t.scrutinee]
    if isinstance(t, UnitInd):
        return "unit-ind", [t.motive, t.handler, t.scrutinee]
    raise TypeError(f"cannot print {type(t).__name__}")


def print_term(t: Term, names: Sequence[Optional[str]] = ()) -> str:
    """Render ``t``; ``names`` name the free variables, outermost first."""
    scope = [None if n == "_" else n for n in names]
    avoid = constants(t) | {n for n in names if n}
    return Printer(avoid).show(t, scope, LAMBDA)


def print_chain(chain: Chain) -> str:
    """Vertical layout: type line, marker line, ..., closing inhabitant."""
    names = chain.context.names()
    lines = ["  " + print_term(chain.goal, names)]
    for link in chain.links:
        marker = link.kind.marker
        if link.witness is not None:
            marker += " " + print_term(link.witness, names)
        if link.justification:
            marker += f' "{link.justification}"'
        lines.append(marker)
        lines.append("  " + print_term(link.lower, names))
    if chain.closing is not None:
        closing = ":: " + print_term(chain.closing.inhabitant, names)
        if chain.closing.justification:
            closing += f' "{chain.closing.justification}"'
        lines.append(closing)
    return "\n".join(lines)
