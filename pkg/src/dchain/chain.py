"""Deductive chains: per-link verification, witness composition, classification.

A chain is written goal-first.  Each link relates the type above it (``upper``)
to the type below it (``lower``) by a consequence (a function lower -> upper),
an equivalence (an inhabitant of ``equiv lower upper``) or a definitional
equality.  Composition runs bottom-up, starting from the closing inhabitant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import kernel
from .kernel import Fuel, FuelExhausted, KernelError
from .syntax import (
    App,
    Const,
    Context,
    Environment,
    Lambda,
    Pi,
    Sigma,
    Term,
    Var,
    alpha_eq,
    apps,
    shift,
)


class LinkKind(enum.IntEnum):
    """Link kinds ordered by strength: a composite takes the strongest kind."""

    DEFEQ = 0
    EQUIV = 1
    CONSEQUENCE = 2

    @property
    def marker(self) -> str:
        return {LinkKind.DEFEQ: "==", LinkKind.EQUIV: "~=", LinkKind.CONSEQUENCE: "<-"}[self]

    @property
    def symbol(self) -> str:
        return {LinkKind.DEFEQ: "≡", LinkKind.EQUIV: "≃", LinkKind.CONSEQUENCE: "→"}[self]


def classify(kinds: Sequence[LinkKind]) -> LinkKind:
    if not kinds:
        raise ValueError("cannot classify an empty list of links")
    return max(kinds)


@dataclass(frozen=True)
class Link:
    kind: LinkKind
    lower: Term
    upper: Term
    witness: Optional[Term] = None
    justification: str = ""


@dataclass(frozen=True)
class Closing:
    bottom: Term
    inhabitant: Term
    justification: str = ""


@dataclass(frozen=True)
class Chain:
    context: Context
    goal: Term
    links: tuple[Link, ...] = ()
    closing: Optional[Closing] = None

    @property
    def types(self) -> list[Term]:
        return [self.goal] + [link.lower for link in self.links]

    @property
    def bottom(self) -> Term:
        return self.links[-1].lower if self.links else self.goal


@dataclass(frozen=True)
class LinkReport:
    index: int
    kind: Optional[LinkKind]  # None for the closing link
    justification: str
    status: str = "ok"


@dataclass(frozen=True)
class ChainResult:
    kind: LinkKind
    witness: Term
    type: Term  # the type the witness was re-checked against
    report: tuple[LinkReport, ...] = field(default=())


class ChainError(Exception):
    """A failing link.  ``index`` counts links from the top; the closing link
    has index ``len(links)``; -1 marks whole-chain problems."""

    def __init__(self, index: int, code: str, message: str, cause: Optional[BaseException] = None):
        super().__init__(f"link {index}: {code}: {message}")
        self.index = index
        self.code = code
        self.message = message
        self.cause = cause


EQUIV = "equiv"
EQUIV_TRANS = "equiv_trans"
EQUIV_FORWARD = "efun"


def _elab(env, ctx, t, fuel):
    return kernel.elaborate(env, ctx, t, fuel)


def equivalence_type(env: Environment, lower: Term, upper: Term) -> Term:
    if EQUIV not in env:
        raise KernelError("equivalence links need an `equiv` definition in the environment")
    return apps(Const(EQUIV), lower, upper)


def forward_map(env: Environment, ctx: Context, lower: Term, upper: Term, e: Term, fuel=None) -> Term:
    """The underlying function ``lower -> upper`` of an equivalence ``e``."""
    if EQUIV_FORWARD in env:
        return apps(Const(EQUIV_FORWARD), lower, upper, e)
    # fall back to projecting the first component of the unfolded Sigma type
    sig = kernel.normalize(env, ctx, equivalence_type(env, lower, upper), fuel)
    if not isinstance(sig, Sigma):
        raise KernelError("equiv does not unfold to a Sigma type")
    from .syntax import SigmaInd

    fn_ty = sig.domain
    return SigmaInd(Lambda(sig, shift(fn_ty, 1)), Lambda(fn_ty, Lambda(sig.codomain, Var(1))), e)


def _check(env, ctx, t, ty, fuel):
    kernel.check(env, ctx, t, ty, fuel)


def verify_link(env: Environment, ctx: Context, link: Link, fuel=None, index: int = 0) -> Link:
    """Check one link; return it with `=` equations elaborated."""
    fuel = kernel._fuel(fuel)
    try:
        lower = _elab(env, ctx, link.lower, fuel)
        upper = _elab(env, ctx, link.upper, fuel)
        kernel.check_type(env, ctx, upper, fuel)
        kernel.check_type(env, ctx, lower, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise ChainError(index, "ill-formed-type", exc.message, exc) from exc
    if link.kind is LinkKind.DEFEQ:
        if not kernel.def_eq(env, ctx, lower, upper, fuel):
            lo = _show(env, ctx, lower, fuel)
            up = _show(env, ctx, upper, fuel)
            raise ChainError(index, "defeq-failed", f"{up} is not definitionally equal to {lo}")
        return Link(link.kind, lower, upper, None, link.justification)
    if link.witness is None:
        raise ChainError(index, "missing-witness", f"a {link.kind.symbol} link needs a witness")
    if link.kind is LinkKind.CONSEQUENCE:
        expected = Pi(lower, shift(upper, 1))
    else:
        try:
            expected = equivalence_type(env, lower, upper)
        except KernelError as exc:
            raise ChainError(index, "witness-type-mismatch", exc.message, exc) from exc
    try:
        witness = _elab(env, ctx, link.witness, fuel)
        _check(env, ctx, witness, expected, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise ChainError(index, "witness-type-mismatch", exc.message, exc) from exc
    return Link(link.kind, lower, upper, witness, link.justification)


def _show(env, ctx, t, fuel) -> str:
    from .surface import print_term

    try:
        t = kernel.normalize(env, ctx, t, fuel)
    except KernelError:
        pass
    return print_term(t, ctx.names())


def _check_adjacency(chain: Chain) -> None:
    above = chain.goal
    for i, link in enumerate(chain.links):
        if not alpha_eq(link.upper, above):
            raise ChainError(i, "adjacency-breach", "upper type differs from the type above the link")
        above = link.lower
    if chain.closing is not None and not alpha_eq(chain.closing.bottom, above):
        raise ChainError(len(chain.links), "adjacency-breach", "closing type differs from the last type")


def verify_chain(env: Environment, chain: Chain, fuel=None) -> ChainResult:
    fuel = kernel._fuel(fuel)
    ctx = chain.context
    n = len(chain.links)
    _check_adjacency(chain)
    try:
        kernel.check_context(env, ctx, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise ChainError(-1, "ill-formed-context", exc.message, exc) from exc
    try:
        goal = _elab(env, ctx, chain.goal, fuel)
        kernel.check_type(env, ctx, goal, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:
        raise ChainError(0 if n else n, "ill-formed-type", exc.message, exc) from exc

    links = [verify_link(env, ctx, link, fuel, i) for i, link in enumerate(chain.links)]
    report = [LinkReport(i, link.kind, link.justification) for i, link in enumerate(links)]
    bottom = links[-1].lower if links else goal
    kinds = [link.kind for link in links]

    if chain.closing is not None:
        try:
            inhabitant = _elab(env, ctx, chain.closing.inhabitant, fuel)
            _check(env, ctx, inhabitant, bottom, fuel)
        except FuelExhausted:
            raise
        except KernelError as exc:
            raise ChainError(n, "witness-type-mismatch", exc.message, exc) from exc
        report.append(LinkReport(n, None, chain.closing.justification))
        value = _compose(env, ctx, links, inhabitant, fuel)
        kind = classify(kinds) if kinds else LinkKind.DEFEQ
        expected = goal
    else:
        if not links:
            raise ChainError(-1, "empty-chain", "a chain needs at least one link or a closing inhabitant")
        kind = classify(kinds)
        if kind is LinkKind.EQUIV:
            value = _compose_equivs(env, ctx, bottom, links, fuel)
            expected = equivalence_type(env, bottom, goal)
        else:
            shifted = [
                Link(l.kind, shift(l.lower, 1), shift(l.upper, 1), None if l.witness is None else shift(l.witness, 1))
                for l in links
            ]
            inner_ctx = ctx.extend("_", bottom)
            value = Lambda(bottom, _compose(env, inner_ctx, shifted, Var(0), fuel))
            expected = Pi(bottom, shift(goal, 1))

    try:
        _check(env, ctx, value, expected, fuel)
    except FuelExhausted:
        raise
    except KernelError as exc:  # pragma: no cover - composition is sound when links are
        raise ChainError(-1, "composite-rejected", exc.message, exc) from exc
    return ChainResult(kind, value, expected, tuple(report))


def _compose(env, ctx, links: Sequence[Link], value: Term, fuel) -> Term:
    for link in reversed(links):
        if link.kind is LinkKind.CONSEQUENCE:
            value = App(link.witness, value)
        elif link.kind is LinkKind.EQUIV:
            value = App(forward_map(env, ctx, link.lower, link.upper, link.witness, fuel), value)
    return value


def _compose_equivs(env, ctx, bottom: Term, links: Sequence[Link], fuel) -> Term:
    acc: Optional[Term] = None
    for link in reversed(links):
        if link.kind is not LinkKind.EQUIV:
            continue
        if acc is None:
            acc = link.witness
        else:
            acc = apps(Const(EQUIV_TRANS), bottom, link.lower, link.upper, acc, link.witness)
    assert acc is not None
    return acc


def _equiv_ends(env, ctx, e: Term, fuel) -> tuple[Term, Term]:
    ty = kernel.infer(env, ctx, e, fuel)
    if not isinstance(ty, Sigma) or not isinstance(ty.domain, Pi):
        raise KernelError("expected an equivalence")
    fn = ty.domain
    return fn.domain, shift(fn.codomain, -1)


def compose_equivalences(env: Environment, ctx: Context, e1: Term, e2: Term, fuel=None) -> Term:
    """Given ``e1 : A ~= B`` and ``e2 : B ~= C`` return ``equiv_trans A B C e1 e2``."""
    fuel = kernel._fuel(fuel)
    a, b = _equiv_ends(env, ctx, e1, fuel)
    b2, c = _equiv_ends(env, ctx, e2, fuel)
    if not kernel.def_eq(env, ctx, b, b2, fuel):
        raise ChainError(
            1, "middle-type-mismatch", f"{_show(env, ctx, b, fuel)} differs from {_show(env, ctx, b2, fuel)}"
        )
    return apps(Const(EQUIV_TRANS), a, b, c, e1, e2)
