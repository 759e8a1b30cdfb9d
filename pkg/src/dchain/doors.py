"""Entry and exit doors of types, and canonical functions found by matching them.

The entry door of a type is the shape of a constructed inhabitant; the exit
door is the shape obtained by eliminating a generic inhabitant.  A canonical
function ``A -> B`` is searched for by opening the exit door of ``A`` and
filling the entry door of ``B`` from what came out.  The search is first-order,
depth-bounded and deterministic: the first match wins.  Every candidate is
re-checked by the kernel before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernel
from .kernel import KernelError
from .syntax import (
    App,
    Context,
    Environment,
    Inl,
    Inr,
    Lambda,
    Pair,
    Pi,
    Sigma,
    SigmaInd,
    Sum,
    SumInd,
    Term,
    Var,
    Const,
    map_term,
    mentions_var0,
    shift,
    substitute,
)

DEFAULT_DEPTH = 6


class UnsupportedHead(ValueError):
    """The heuristic has no door for this type former."""


@dataclass(frozen=True)
class DoorPattern:
    """A door: ``body`` is a term over ``binders`` inhabiting the type the door
    was computed from.  A coproduct entry door has no single body; its two
    ``alternatives`` are the injections."""

    shape: str
    binders: tuple[tuple[str, Term], ...]
    body: Optional[Term]
    alternatives: tuple["DoorPattern", ...] = ()

    def show(self, names: Sequence[str] = ()) -> str:
        from .surface import print_term

        if self.alternatives:
            return " | ".join(alt.show(names) for alt in self.alternatives)
        scope = list(names)
        parts = []
        for name, ty in self.binders:
            parts.append(f"{name} : {print_term(ty, scope)}")
            scope.append(name)
        return f"[{', '.join(parts)}] {print_term(self.body, scope)}"


# -- projections ---------------------------------------------------------------


def pr1(sigma: Sigma, u: Term) -> Term:
    """First projection of ``u : sigma``, as a raw eliminator."""
    motive = Lambda(sigma, shift(sigma.domain, 1))
    handler = Lambda(sigma.domain, Lambda(sigma.codomain, Var(1)))
    return SigmaInd(motive, handler, u)


def pr2(sigma: Sigma, u: Term) -> Term:
    """Second projection of ``u : sigma``."""
    first = pr1(shift(sigma, 1), Var(0))
    motive = Lambda(sigma, substitute(shift(sigma.codomain, 1, 1), first))
    handler = Lambda(sigma.domain, Lambda(sigma.codomain, Var(0)))
    return SigmaInd(motive, handler, u)


# -- doors -----------------------------------------------------------------------


def _unsupported(ty: Term) -> UnsupportedHead:
    return UnsupportedHead(f"no door for a type headed by {type(ty).__name__}")


def entry_door(ty: Term) -> DoorPattern:
    if isinstance(ty, Sigma):
        return DoorPattern("pair", (("u1", ty.domain), ("u2", ty.codomain)), Pair(Var(1), Var(0)))
    if isinstance(ty, Pi):
        # the hole is a function h; the door is its eta-expansion \x. h x
        return DoorPattern("lambda", (("h", ty),), Lambda(shift(ty.domain, 1), App(Var(1), Var(0))))
    if isinstance(ty, Sum):
        left = DoorPattern("inl", (("u1", ty.left),), Inl(Var(0), shift(ty.right, 1)))
        right = DoorPattern("inr", (("u2", ty.right),), Inr(Var(0), shift(ty.left, 1)))
        return DoorPattern("sum", (), None, (left, right))
    raise _unsupported(ty)


def exit_door(ty: Term) -> DoorPattern:
    u = shift(ty, 1)
    if isinstance(ty, Sigma):
        return DoorPattern("proj", (("u", ty),), Pair(pr1(u, Var(0)), pr2(u, Var(0))))
    if isinstance(ty, Pi):
        return DoorPattern("apply", (("u", ty),), Lambda(shift(ty.domain, 1), App(Var(1), Var(0))))
    if isinstance(ty, Sum):
        inner = shift(ty, 2)
        case = SumInd(
            Lambda(u, inner),
            Lambda(u.left, Inl(Var(0), inner.right)),
            Lambda(u.right, Inr(Var(0), inner.left)),
            Var(0),
        )
        return DoorPattern("case", (("u", ty),), case)
    raise _unsupported(ty)


# -- matching ------------------------------------------------------------------


@dataclass(frozen=True)
class _Atom:
    term: Term
    type: Term  # normal form
    splittable: bool = False  # a coproduct variable not yet split


class _Search:
    def __init__(self, env: Environment, fuel):
        self.env = env
        self.fuel = fuel
        self._fresh = itertools.count()

    def nf(self, ctx: Context, ty: Term) -> Term:
        return kernel.normalize(self.env, ctx, ty, self.fuel)

    def same(self, ctx: Context, a: Term, b: Term) -> bool:
        return kernel.def_eq(self.env, ctx, a, b, self.fuel)

    def opened(self, ctx: Context, term: Term, ty: Term) -> list[_Atom]:
        """``term`` and everything its exit door exposes without arguments."""
        ty = self.nf(ctx, ty)
        out = [_Atom(term, ty, isinstance(term, Var) and isinstance(ty, Sum))]
        if isinstance(ty, Sigma):
            first = pr1(ty, term)
            out += self.opened(ctx, first, ty.domain)
            out += self.opened(ctx, pr2(ty, term), substitute(ty.codomain, first))
        return out

    def bind(self, ctx: Context, atoms: list[_Atom], name: str, ty: Term) -> tuple[Context, list[_Atom]]:
        inner = ctx.extend(name, ty)
        moved = [_Atom(shift(a.term, 1), shift(a.type, 1), a.splittable) for a in atoms]
        return inner, self.opened(inner, Var(0), shift(ty, 1)) + moved

    # filling a hole of type `goal`
    def fill(self, ctx: Context, atoms: list[_Atom], goal: Term, depth: int) -> Optional[Term]:
        if depth <= 0:
            return None
        goal = self.nf(ctx, goal)
        if isinstance(goal, Pi):
            inner, moved = self.bind(ctx, atoms, f"x{len(ctx)}", goal.domain)
            body = self.fill(inner, moved, goal.codomain, depth - 1)
            return None if body is None else Lambda(goal.domain, body)
        if isinstance(goal, Sigma):
            first = self.fill(ctx, atoms, goal.domain, depth - 1)
            if first is None:
                return None
            second = self.fill(ctx, atoms, substitute(goal.codomain, first), depth - 1)
            return None if second is None else Pair(first, second)
        for atom in atoms:
            if self.same(ctx, atom.type, goal):
                return atom.term
        for atom in atoms:
            if isinstance(atom.type, Pi):
                found = self.apply(ctx, atoms, atom.term, atom.type, goal, depth)
                if found is not None:
                    return found
        for i, atom in enumerate(atoms):
            if atom.splittable:
                found = self.split(ctx, atoms, i, goal, depth)
                if found is not None:
                    return found
        if isinstance(goal, Sum):
            left = self.fill(ctx, atoms, goal.left, depth - 1)
            if left is not None:
                return Inl(left, goal.right)
            right = self.fill(ctx, atoms, goal.right, depth - 1)
            if right is not None:
                return Inr(right, goal.left)
        return None

    def apply(self, ctx, atoms, fn: Term, fty: Term, goal: Term, depth: int) -> Optional[Term]:
        """Apply ``fn`` to arguments until its type is ``goal``."""
        fty = self.nf(ctx, fty)
        if self.same(ctx, fty, goal):
            return fn
        if not isinstance(fty, Pi):
            return None
        if mentions_var0(fty.codomain):
            # the argument shows in the result type: take it from the context
            for atom in atoms:
                if self.same(ctx, atom.type, fty.domain):
                    found = self.apply(ctx, atoms, App(fn, atom.term), substitute(fty.codomain, atom.term), goal, depth)
                    if found is not None:
                        return found
            return None
        # independent argument: reach the goal first, then fill the argument
        hole = Const(f"\0arg{next(self._fresh)}")
        found = self.apply(ctx, atoms, App(fn, hole), shift(fty.codomain, -1), goal, depth)
        if found is None:
            return None
        arg = self.fill(ctx, atoms, fty.domain, depth - 1)
        if arg is None:
            return None
        return _plug(found, hole.name, arg)

    def split(self, ctx, atoms, index: int, goal: Term, depth: int) -> Optional[Term]:
        """Case analysis on a coproduct variable, for a goal not mentioning it."""
        atom = atoms[index]
        rest = atoms[:index] + [_Atom(atom.term, atom.type)] + atoms[index + 1 :]
        sum_ty: Sum = atom.type
        branches = []
        for side in (sum_ty.left, sum_ty.right):
            inner, moved = self.bind(ctx, rest, f"x{len(ctx)}", side)
            body = self.fill(inner, moved, shift(goal, 1), depth - 1)
            if body is None:
                return None
            branches.append(Lambda(side, body))
        return SumInd(Lambda(sum_ty, shift(goal, 1)), branches[0], branches[1], atom.term)


def _plug(term: Term, name: str, arg: Term) -> Term:
    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Const) and t.name == name:
            return shift(arg, depth)
        return map_term(t, go, depth)

    return go(term, 0)


def synthesize(
    env: Environment,
    ctx: Context,
    source: Term,
    target: Term,
    depth: int = DEFAULT_DEPTH,
    fuel=None,
) -> Optional[Term]:
    """A canonical function ``source -> target`` in ``ctx``, or None.

    The candidate is checked by the kernel; a candidate that fails the check is
    dropped, so None is also the answer when matching produced garbage."""
    fuel = kernel._fuel(fuel)
    try:
        source = kernel.elaborate(env, ctx, source, fuel)
        target = kernel.elaborate(env, ctx, target, fuel)
        search = _Search(env, fuel)
        inner, atoms = search.bind(ctx, [], "u", search.nf(ctx, source))
        body = search.fill(inner, atoms, shift(target, 1), depth)
        if body is None:
            return None
        candidate = Lambda(source, body)
        kernel.check(env, ctx, candidate, Pi(source, shift(target, 1)), fuel)
    except KernelError:
        return None
    return candidate


__all__ = ["DoorPattern", "UnsupportedHead", "entry_door", "exit_door", "synthesize", "pr1", "pr2", "DEFAULT_DEPTH"]
