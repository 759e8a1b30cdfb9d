"""Random well-typed closed terms over simple types, for property tests.

Types are built from N, Unit, products, sums and functions and never mention
variables, so they need no shifting when moved under binders.  Terms use
every term former's introduction and elimination, plus beta redexes, so that
normalization has real work to do."""

from __future__ import annotations

import random
from typing import Optional

from dchain.syntax import (
    App,
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
    Var,
    Zero,
)


def random_type(rng: random.Random, depth: int = 2) -> Term:
    if depth <= 0 or rng.random() < 0.35:
        return rng.choice([Nat(), Nat(), Unit()])
    former = rng.choice(["pi", "sigma", "sum"])
    a, b = random_type(rng, depth - 1), random_type(rng, depth - 1)
    return {"pi": Pi, "sigma": Sigma, "sum": Sum}[former](a, b)


class TermGen:
    def __init__(self, rng: random.Random, max_depth: int = 4):
        self.rng = rng
        self.max_depth = max_depth

    def variables(self, ctx: list[Term], ty: Term) -> list[Term]:
        return [Var(len(ctx) - 1 - i) for i, t in enumerate(ctx) if t == ty]

    def term(self, ctx: list[Term], ty: Term, depth: Optional[int] = None) -> Term:
        depth = self.max_depth if depth is None else depth
        rng = self.rng
        found = self.variables(ctx, ty)
        if found and (depth <= 0 or rng.random() < 0.3):
            return rng.choice(found)
        if depth > 0 and rng.random() < 0.45:
            return self.elim(ctx, ty, depth - 1)
        return self.intro(ctx, ty, max(depth - 1, 0))

    def intro(self, ctx: list[Term], ty: Term, depth: int) -> Term:
        rng = self.rng
        if isinstance(ty, Nat):
            if depth <= 0 or rng.random() < 0.4:
                return Zero()
            return Succ(self.term(ctx, ty, depth))
        if isinstance(ty, Unit):
            return Star()
        if isinstance(ty, Pi):
            return Lambda(ty.domain, self.term(ctx + [ty.domain], ty.codomain, depth))
        if isinstance(ty, Sigma):
            return Pair(self.term(ctx, ty.domain, depth), self.term(ctx, ty.codomain, depth))
        if isinstance(ty, Sum):
            if rng.random() < 0.5:
                return Inl(self.term(ctx, ty.left, depth), ty.right)
            return Inr(self.term(ctx, ty.right, depth), ty.left)
        raise ValueError(f"no introduction for {ty}")

    def elim(self, ctx: list[Term], ty: Term, depth: int) -> Term:
        rng = self.rng
        kind = rng.choice(["beta", "app", "nat", "sum", "sigma", "unit", "id"])
        a = random_type(rng, 1)
        if kind == "beta":
            return App(Lambda(a, self.term(ctx + [a], ty, depth)), self.term(ctx, a, depth))
        if kind == "app":
            return App(self.term(ctx, Pi(a, ty), depth), self.term(ctx, a, depth))
        if kind == "nat":
            step = Lambda(Nat(), Lambda(ty, self.term(ctx + [Nat(), ty], ty, depth)))
            return NatInd(Lambda(Nat(), ty), Pair(self.term(ctx, ty, depth), step), self.term(ctx, Nat(), depth))
        if kind == "sum":
            b = random_type(rng, 1)
            return SumInd(
                Lambda(Sum(a, b), ty),
                Lambda(a, self.term(ctx + [a], ty, depth)),
                Lambda(b, self.term(ctx + [b], ty, depth)),
                self.term(ctx, Sum(a, b), depth),
            )
        if kind == "sigma":
            b = random_type(rng, 1)
            handler = Lambda(a, Lambda(b, self.term(ctx + [a, b], ty, depth)))
            return SigmaInd(Lambda(Sigma(a, b), ty), handler, self.term(ctx, Sigma(a, b), depth))
        if kind == "unit":
            return UnitInd(Lambda(Unit(), ty), self.term(ctx, ty, depth), self.term(ctx, Unit(), depth))
        point = self.term(ctx, a, depth)
        motive = Lambda(a, Lambda(a, Lambda(Id(a, Var(1), Var(0)), ty)))
        return IdInd(motive, Lambda(a, self.term(ctx + [a], ty, depth)), point, point, Refl(a, point))


def random_typed_term(seed: int, max_depth: int = 4) -> tuple[Term, Term]:
    """A closed ``(term, type)`` pair, determined by ``seed``."""
    rng = random.Random(seed)
    ty = random_type(rng)
    return TermGen(rng, max_depth).term([], ty), ty
