"""Nameless term language, contexts and environments.

Bound variables are de Bruijn indices: ``Var(0)`` is the innermost binder.
Only ``Pi``, ``Lambda`` and ``Sigma`` bind, each exactly one variable, in
their second field.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Any, Callable, Iterator, Mapping, Optional


class Term:
    """Base class of all syntactic forms."""

    __slots__ = ()
    # name of the field that lives under one extra binder, if any
    _binder: Optional[str] = None

    def children(self) -> Iterator[tuple[str, "Term"]]:
        for f in fields(self):  # type: ignore[arg-type]
            value = getattr(self, f.name)
            if isinstance(value, Term):
                yield f.name, value

    def __str__(self) -> str:  # pragma: no cover - convenience
        from .surface import print_term

        return print_term(self)


def _term(cls):
    return dataclass(frozen=True, slots=True)(cls)


@_term
class Var(Term):
    index: int


@_term
class Const(Term):
    name: str


@_term
class Universe(Term):
    level: int


@_term
class Pi(Term):
    domain: Term
    codomain: Term
    _binder = "codomain"


@_term
class Lambda(Term):
    domain: Term
    body: Term
    _binder = "body"


@_term
class App(Term):
    fn: Term
    arg: Term


@_term
class Sigma(Term):
    domain: Term
    codomain: Term
    _binder = "codomain"


@_term
class Pair(Term):
    first: Term
    second: Term


@_term
class SigmaInd(Term):
    motive: Term
    handler: Term
    scrutinee: Term


@_term
class Sum(Term):
    left: Term
    right: Term


@_term
class Inl(Term):
    value: Term
    right: Term  # the type of the other summand


@_term
class Inr(Term):
    value: Term
    left: Term


@_term
class SumInd(Term):
    motive: Term
    on_left: Term
    on_right: Term
    scrutinee: Term


@_term
class Nat(Term):
    pass


@_term
class Zero(Term):
    pass


@_term
class Succ(Term):
    pred: Term


@_term
class NatInd(Term):
    motive: Term
    handler: Term  # pair (base case, step function)
    scrutinee: Term


@_term
class Empty(Term):
    pass


@_term
class EmptyInd(Term):
    motive: Term
    scrutinee: Term


@_term
class Unit(Term):
    pass


@_term
class Star(Term):
    pass


@_term
class UnitInd(Term):
    motive: Term
    handler: Term
    scrutinee: Term


@_term
class Id(Term):
    type: Optional[Term]  # None until the `a = b` sugar is elaborated
    lhs: Term
    rhs: Term


@_term
class Refl(Term):
    type: Term
    point: Term


@_term
class IdInd(Term):
    motive: Term
    handler: Term
    lhs: Term
    rhs: Term
    path: Term


@_term
class BasedIdInd(Term):
    type: Term
    base: Term
    motive: Term
    handler: Term
    endpoint: Term
    path: Term


class ShiftError(ValueError):
    """A shift would have produced a negative de Bruijn index."""


def map_term(t: Term, fn: Callable[[Term, int], Term], depth: int = 0) -> Term:
    """Rebuild ``t`` with ``fn(child, depth')`` applied to every direct child."""
    binder = t._binder
    changes = {}
    for name, child in t.children():
        new = fn(child, depth + 1 if name == binder else depth)
        if new is not child:
            changes[name] = new
    if not changes:
        return t
    kwargs = {f.name: changes.get(f.name, getattr(t, f.name)) for f in fields(t)}  # type: ignore[arg-type]
    return type(t)(**kwargs)


def shift(term: Term, amount: int, cutoff: int = 0) -> Term:
    if amount == 0:
        return term

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Var):
            if t.index < depth:
                return t
            new = t.index + amount
            if new < depth:
                raise ShiftError(f"shifting Var({t.index}) by {amount} leaves the binder scope")
            return Var(new)
        return map_term(t, go, depth)

    return go(term, cutoff)


def substitute(body: Term, value: Term) -> Term:
    """Instantiate binder index 0 of ``body`` with ``value``."""

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Var):
            if t.index == depth:
                return shift(value, depth)
            if t.index > depth:
                return Var(t.index - 1)
            return t
        return map_term(t, go, depth)

    return go(body, 0)


def alpha_eq(a: Term, b: Term) -> bool:
    # nameless terms: alpha-equivalence is structural equality
    return a == b


def free_indices(term: Term) -> set[int]:
    """Free de Bruijn indices of ``term``, relative to its top level."""
    found: set[int] = set()

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Var):
            if t.index >= depth:
                found.add(t.index - depth)
            return t
        return map_term(t, go, depth)

    go(term, 0)
    return found


def mentions_var0(term: Term) -> bool:
    return 0 in free_indices(term)


def constants(term: Term) -> set[str]:
    found: set[str] = set()

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Const):
            found.add(t.name)
        return map_term(t, go, depth)

    go(term, 0)
    return found


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def pis(binders: list[tuple[str, Term]], body: Term) -> Term:
    for _, ty in reversed(binders):
        body = Pi(ty, body)
    return body


def lambdas(binders: list[tuple[str, Term]], body: Term) -> Term:
    for _, ty in reversed(binders):
        body = Lambda(ty, body)
    return body


def apps(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


@dataclass(frozen=True)
class Context:
    """Telescope of typed declarations; entry ``i`` is typed in entries ``[:i]``."""

    entries: tuple[tuple[str, Term], ...] = ()

    def extend(self, name: str, type: Term) -> "Context":
        return Context(self.entries + ((name, type),))

    def names(self) -> list[str]:
        return [n for n, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Entry:
    name: str
    type: Term
    body: Optional[Term] = None
    kind: str = "def"  # def | axiom | theorem
    record: Any = None  # TheoremRecord for theorems


@dataclass(frozen=True)
class Environment:
    """Immutable ordered map from names to checked entries."""

    _entries: tuple[Entry, ...] = ()
    _index: Mapping[str, int] = field(default_factory=dict, compare=False, repr=False)

    def extend(self, entry: Entry) -> "Environment":
        if entry.name in self._index:
            raise ValueError(f"duplicate definition of {entry.name!r}")
        index = dict(self._index)
        index[entry.name] = len(self._entries)
        return Environment(self._entries + (entry,), index)

    def lookup(self, name: str) -> Optional[Entry]:
        i = self._index.get(name)
        return None if i is None else self._entries[i]

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[Entry]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> list[str]:
        return [e.name for e in self._entries]

    def theorems(self) -> list[Entry]:
        return [e for e in self._entries if e.kind == "theorem"]
