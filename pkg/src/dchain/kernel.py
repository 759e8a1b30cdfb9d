"""Type checking, normalization and definitional equality.

Evaluation is normalization-by-evaluation: terms are evaluated into semantic
values (closures for binders, neutral terms for stuck eliminations) and read
back into beta-normal terms.  Conversion compares values directly and performs
eta only at Pi types.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .syntax import (
    App,
    BasedIdInd,
    Const,
    Context,
    Empty,
    EmptyInd,
    Environment,
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
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_FUEL = 1_000_000


# ---------------------------------------------------------------------------
# errors


class KernelError(Exception):
    """A typing or conversion failure; carries the offending term and context."""

    code = "kernel-error"

    def __init__(self, message: str, term: Optional[Term] = None, ctx: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.message = message
        self.term = term
        self.ctx = list(ctx) if ctx is not None else None


class UnboundVariable(KernelError):
    code = "unbound-variable"


class UniverseMismatch(KernelError):
    code = "universe-mismatch"


class NotAFunction(KernelError):
    code = "application-of-non-function"


class MotiveMismatch(KernelError):
    code = "motive-shape-mismatch"


class AnnotationMismatch(KernelError):
    code = "annotation-mismatch"


class TypeMismatch(KernelError):
    code = "type-mismatch"

    def __init__(self, message, term=None, ctx=None, expected=None, actual=None):
        super().__init__(message, term, ctx)
        self.expected = expected
        self.actual = actual


class ContextError(KernelError):
    code = "ill-formed-context"


class DuplicateName(ContextError):
    code = "duplicate-name"


class IllFormedEntryType(ContextError):
    code = "ill-formed-entry-type"


class FuelExhausted(KernelError):
    """The reduction step budget ran out; never a verdict on the term."""

    code = "fuel-exhausted"


class Fuel:
    """Reduction step budget, decremented once per beta/iota/delta step."""

    __slots__ = ("remaining", "budget")

    def __init__(self, steps: int = DEFAULT_FUEL):
        self.budget = steps
        self.remaining = steps

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise FuelExhausted(f"reduction budget of {self.budget} steps exhausted")

    @property
    def used(self) -> int:
        return self.budget - max(self.remaining, 0)


# ---------------------------------------------------------------------------
# values


class Value:
    __slots__ = ()


class Closure:
    __slots__ = ()

    def apply(self, ev: "Evaluator", arg: "Value") -> "Value":  # pragma: no cover
        raise NotImplementedError


class TermClosure(Closure):
    __slots__ = ("env", "body")

    def __init__(self, env: tuple, body: Term):
        self.env = env
        self.body = body

    def apply(self, ev, arg):
        return ev.eval(self.body, self.env + (arg,))


class FnClosure(Closure):
    __slots__ = ("fn",)

    def __init__(self, fn: Callable[[Value], Value]):
        self.fn = fn

    def apply(self, ev, arg):
        return self.fn(arg)


def _const(v: Value) -> Closure:
    return FnClosure(lambda _: v)


def _value(cls):
    return dataclass(frozen=True, slots=True, eq=False)(cls)


@_value
class VUniverse(Value):
    level: int


@_value
class VPi(Value):
    dom: Value
    cod: Closure


@_value
class VLam(Value):
    dom: Value
    body: Closure


@_value
class VSigma(Value):
    dom: Value
    cod: Closure


@_value
class VPair(Value):
    fst: Value
    snd: Value


@_value
class VSum(Value):
    left: Value
    right: Value


@_value
class VInl(Value):
    value: Value
    right: Value


@_value
class VInr(Value):
    value: Value
    left: Value


@_value
class VNat(Value):
    pass


@_value
class VZero(Value):
    pass


@_value
class VSucc(Value):
    pred: Value


@_value
class VEmpty(Value):
    pass


@_value
class VUnit(Value):
    pass


@_value
class VStar(Value):
    pass


@_value
class VId(Value):
    type: Value
    lhs: Value
    rhs: Value


@_value
class VRefl(Value):
    type: Value
    point: Value


class Neutral(Value):
    """A value whose head is a variable, an axiom, or a stuck eliminator."""

    __slots__ = ()


@_value
class NVar(Neutral):
    level: int


@_value
class NConst(Neutral):
    name: str


@_value
class NApp(Neutral):
    fn: Neutral
    arg: Value


@_value
class NSigmaInd(Neutral):
    motive: Value
    handler: Value
    scrutinee: Neutral


@_value
class NSumInd(Neutral):
    motive: Value
    on_left: Value
    on_right: Value
    scrutinee: Neutral


@_value
class NNatInd(Neutral):
    motive: Value
    handler: Value
    scrutinee: Neutral


@_value
class NEmptyInd(Neutral):
    motive: Value
    scrutinee: Neutral


@_value
class NUnitInd(Neutral):
    motive: Value
    handler: Value
    scrutinee: Neutral


@_value
class NIdInd(Neutral):
    motive: Value
    handler: Value
    lhs: Value
    rhs: Value
    path: Neutral


@_value
class NBasedIdInd(Neutral):
    type: Value
    base: Value
    motive: Value
    handler: Value
    endpoint: Value
    path: Neutral


class VDef(Value):
    """A defined constant applied to arguments, unfolded only on demand.

    Keeping the application folded lets conversion compare two occurrences of
    the same definition by their arguments, and lets readback print types in
    terms of the definitions they were written with."""

    __slots__ = ("name", "args", "unfolded")

    def __init__(self, name: str, args: tuple = ()):
        self.name = name
        self.args = args
        self.unfolded: Optional[Value] = None


VNAT, VZERO, VUNIT, VSTAR, VEMPTY = VNat(), VZero(), VUnit(), VStar(), VEmpty()


# ---------------------------------------------------------------------------
# evaluation, readback, conversion


class Evaluator:
    def __init__(self, env: Environment, fuel: Optional[Fuel] = None):
        self.genv = env
        self.fuel = fuel if fuel is not None else Fuel()
        self._defs: dict[str, Value] = {}
        self._bodies: dict[str, Value] = {}
        self._types: dict[str, Value] = {}

    # -- evaluation --------------------------------------------------------

    def eval(self, t: Term, env: tuple) -> Value:
        ev = self.eval
        if isinstance(t, Var):
            return env[len(env) - 1 - t.index]
        if isinstance(t, App):
            return self.apply(ev(t.fn, env), ev(t.arg, env))
        if isinstance(t, Lambda):
            return VLam(ev(t.domain, env), TermClosure(env, t.body))
        if isinstance(t, Pi):
            return VPi(ev(t.domain, env), TermClosure(env, t.codomain))
        if isinstance(t, Sigma):
            return VSigma(ev(t.domain, env), TermClosure(env, t.codomain))
        if isinstance(t, Const):
            return self.constant(t.name)
        if isinstance(t, Pair):
            return VPair(ev(t.first, env), ev(t.second, env))
        if isinstance(t, Universe):
            return VUniverse(t.level)
        if isinstance(t, Id):
            if t.type is None:
                raise KernelError("unelaborated equation: `a = b` needs its type inferred first", t)
            return VId(ev(t.type, env), ev(t.lhs, env), ev(t.rhs, env))
        if isinstance(t, Refl):
            return VRefl(ev(t.type, env), ev(t.point, env))
        if isinstance(t, Nat):
            return VNAT
        if isinstance(t, Zero):
            return VZERO
        if isinstance(t, Succ):
            return VSucc(ev(t.pred, env))
        if isinstance(t, Unit):
            return VUNIT
        if isinstance(t, Star):
            return VSTAR
        if isinstance(t, Empty):
            return VEMPTY
        if isinstance(t, Sum):
            return VSum(ev(t.left, env), ev(t.right, env))
        if isinstance(t, Inl):
            return VInl(ev(t.value, env), ev(t.right, env))
        if isinstance(t, Inr):
            return VInr(ev(t.value, env), ev(t.left, env))
        if isinstance(t, SigmaInd):
            return self.sigma_ind(ev(t.motive, env), ev(t.handler, env), ev(t.scrutinee, env))
        if isinstance(t, SumInd):
            return self.sum_ind(ev(t.motive, env), ev(t.on_left, env), ev(t.on_right, env), ev(t.scrutinee, env))
        if isinstance(t, NatInd):
            return self.nat_ind(ev(t.motive, env), ev(t.handler, env), ev(t.scrutinee, env))
        if isinstance(t, EmptyInd):
            s = self.force(ev(t.scrutinee, env))
            if isinstance(s, Neutral):
                return NEmptyInd(ev(t.motive, env), s)
            raise KernelError("empty-ind applied to a non-neutral value", t)
        if isinstance(t, UnitInd):
            return self.unit_ind(ev(t.motive, env), ev(t.handler, env), ev(t.scrutinee, env))
        if isinstance(t, IdInd):
            return self.id_ind(
                ev(t.motive, env), ev(t.handler, env), ev(t.lhs, env), ev(t.rhs, env), ev(t.path, env)
            )
        if isinstance(t, BasedIdInd):
            return self.based_ind(
                ev(t.type, env),
                ev(t.base, env),
                ev(t.motive, env),
                ev(t.handler, env),
                ev(t.endpoint, env),
                ev(t.path, env),
            )
        raise KernelError(f"cannot evaluate {type(t).__name__}", t)

    def constant(self, name: str) -> Value:
        cached = self._defs.get(name)
        if cached is not None:
            return cached
        entry = self.genv.lookup(name)
        if entry is None:
            raise UnboundVariable(f"unknown constant {name!r}", Const(name))
        v: Value = NConst(name) if entry.body is None else VDef(name)
        self._defs[name] = v
        return v

    def _body(self, name: str) -> Value:
        v = self._bodies.get(name)
        if v is None:
            v = self.eval(self.genv.lookup(name).body, ())
            self._bodies[name] = v
        return v

    def force(self, v: Value) -> Value:
        """Unfold folded definitions at the head until something else shows."""
        while isinstance(v, VDef):
            if v.unfolded is None:
                self.fuel.spend()
                f = self._body(v.name)
                for a in v.args:
                    f = self.apply(f, a)
                v.unfolded = f
            v = v.unfolded
        return v

    def constant_type(self, name: str) -> Value:
        cached = self._types.get(name)
        if cached is not None:
            return cached
        entry = self.genv.lookup(name)
        if entry is None:
            raise UnboundVariable(f"unknown constant {name!r}", Const(name))
        v = self.eval(entry.type, ())
        self._types[name] = v
        return v

    def apply(self, f: Value, a: Value) -> Value:
        if isinstance(f, VDef):
            return VDef(f.name, f.args + (a,))
        if isinstance(f, VLam):
            self.fuel.spend()
            return f.body.apply(self, a)
        if isinstance(f, Neutral):
            return NApp(f, a)
        raise NotAFunction(f"cannot apply a non-function value ({type(f).__name__})")

    def sigma_ind(self, motive: Value, handler: Value, s: Value) -> Value:
        s = self.force(s)
        if isinstance(s, VPair):
            self.fuel.spend()
            return self.apply(self.apply(handler, s.fst), s.snd)
        if isinstance(s, Neutral):
            return NSigmaInd(motive, handler, s)
        raise KernelError(f"sigma-ind on a non-pair value ({type(s).__name__})")

    def sum_ind(self, motive: Value, on_left: Value, on_right: Value, s: Value) -> Value:
        s = self.force(s)
        if isinstance(s, VInl):
            self.fuel.spend()
            return self.apply(on_left, s.value)
        if isinstance(s, VInr):
            self.fuel.spend()
            return self.apply(on_right, s.value)
        if isinstance(s, Neutral):
            return NSumInd(motive, on_left, on_right, s)
        raise KernelError(f"sum-ind on a non-injection value ({type(s).__name__})")

    def nat_ind(self, motive: Value, handler: Value, s: Value) -> Value:
        s = self.force(s)
        if isinstance(s, VZero):
            self.fuel.spend()
            return self._nat_base(motive, handler)
        if isinstance(s, VSucc):
            self.fuel.spend()
            step = self._nat_step(motive, handler)
            return self.apply(self.apply(step, s.pred), self.nat_ind(motive, handler, s.pred))
        if isinstance(s, Neutral):
            return NNatInd(motive, handler, s)
        raise KernelError(f"nat-ind on a non-numeral value ({type(s).__name__})")

    def _nat_handler_type(self, motive: Value) -> tuple[Value, Value]:
        base = self.apply(motive, VZERO)
        step = VPi(
            VNAT,
            FnClosure(lambda n: VPi(self.apply(motive, n), FnClosure(lambda _: self.apply(motive, VSucc(n))))),
        )
        return base, step

    def _nat_base(self, motive: Value, handler: Value) -> Value:
        # the base case is the first projection of the handler pair
        handler = self.force(handler)
        if isinstance(handler, VPair):
            return handler.fst
        base, step = self._nat_handler_type(motive)
        pair_ty = VSigma(base, _const(step))
        return self.sigma_ind(
            VLam(pair_ty, _const(base)),
            VLam(base, FnClosure(lambda a: VLam(step, _const(a)))),
            handler,
        )

    def _nat_step(self, motive: Value, handler: Value) -> Value:
        handler = self.force(handler)
        if isinstance(handler, VPair):
            return handler.snd
        base, step = self._nat_handler_type(motive)
        pair_ty = VSigma(base, _const(step))
        return self.sigma_ind(
            VLam(pair_ty, _const(step)),
            VLam(base, FnClosure(lambda _: VLam(step, FnClosure(lambda b: b)))),
            handler,
        )

    def unit_ind(self, motive: Value, handler: Value, s: Value) -> Value:
        s = self.force(s)
        if isinstance(s, VStar):
            self.fuel.spend()
            return handler
        if isinstance(s, Neutral):
            return NUnitInd(motive, handler, s)
        raise KernelError(f"unit-ind on a non-unit value ({type(s).__name__})")

    def id_ind(self, motive, handler, lhs, rhs, path) -> Value:
        path = self.force(path)
        if isinstance(path, VRefl):
            self.fuel.spend()
            return self.apply(handler, path.point)
        if isinstance(path, Neutral):
            return NIdInd(motive, handler, lhs, rhs, path)
        raise KernelError(f"id-ind on a non-path value ({type(path).__name__})")

    def based_ind(self, type_, base, motive, handler, endpoint, path) -> Value:
        path = self.force(path)
        if isinstance(path, VRefl):
            self.fuel.spend()
            return handler
        if isinstance(path, Neutral):
            return NBasedIdInd(type_, base, motive, handler, endpoint, path)
        raise KernelError(f"based-ind on a non-path value ({type(path).__name__})")

    # -- readback ----------------------------------------------------------

    def quote(self, lvl: int, v: Value, fold: bool = False) -> Term:
        """Read ``v`` back as a term: the normal form, or with ``fold`` a term
        that keeps applications of definitions folded."""
        if isinstance(v, VDef):
            if not fold:
                return self.quote(lvl, self.force(v))
            t: Term = Const(v.name)
            for a in v.args:
                t = App(t, self.quote(lvl, a, True))
            return t

        def q(l: int, x: Value) -> Term:
            return self.quote(l, x, fold)

        if isinstance(v, Neutral):
            return self.quote_neutral(lvl, v, fold)
        if isinstance(v, VLam):
            return Lambda(q(lvl, v.dom), q(lvl + 1, v.body.apply(self, NVar(lvl))))
        if isinstance(v, VPi):
            return Pi(q(lvl, v.dom), q(lvl + 1, v.cod.apply(self, NVar(lvl))))
        if isinstance(v, VSigma):
            return Sigma(q(lvl, v.dom), q(lvl + 1, v.cod.apply(self, NVar(lvl))))
        if isinstance(v, VPair):
            return Pair(q(lvl, v.fst), q(lvl, v.snd))
        if isinstance(v, VUniverse):
            return Universe(v.level)
        if isinstance(v, VId):
            return Id(q(lvl, v.type), q(lvl, v.lhs), q(lvl, v.rhs))
        if isinstance(v, VRefl):
            return Refl(q(lvl, v.type), q(lvl, v.point))
        if isinstance(v, VNat):
            return Nat()
        if isinstance(v, VZero):
            return Zero()
        if isinstance(v, VSucc):
            return Succ(q(lvl, v.pred))
        if isinstance(v, VUnit):
            return Unit()
        if isinstance(v, VStar):
            return Star()
        if isinstance(v, VEmpty):
            return Empty()
        if isinstance(v, VSum):
            return Sum(q(lvl, v.left), q(lvl, v.right))
        if isinstance(v, VInl):
            return Inl(q(lvl, v.value), q(lvl, v.right))
        if isinstance(v, VInr):
            return Inr(q(lvl, v.value), q(lvl, v.left))
        raise KernelError(f"cannot read back {type(v).__name__}")

    def quote_neutral(self, lvl: int, n: Neutral, fold: bool = False) -> Term:
        def q(l: int, x: Value) -> Term:
            return self.quote(l, x, fold)

        def qn(x: Neutral) -> Term:
            return self.quote_neutral(lvl, x, fold)

        if isinstance(n, NVar):
            return Var(lvl - 1 - n.level)
        if isinstance(n, NConst):
            return Const(n.name)
        if isinstance(n, NApp):
            return App(qn(n.fn), q(lvl, n.arg))
        if isinstance(n, NSigmaInd):
            return SigmaInd(q(lvl, n.motive), q(lvl, n.handler), qn(n.scrutinee))
        if isinstance(n, NSumInd):
            return SumInd(q(lvl, n.motive), q(lvl, n.on_left), q(lvl, n.on_right), qn(n.scrutinee))
        if isinstance(n, NNatInd):
            return NatInd(q(lvl, n.motive), q(lvl, n.handler), qn(n.scrutinee))
        if isinstance(n, NEmptyInd):
            return EmptyInd(q(lvl, n.motive), qn(n.scrutinee))
        if isinstance(n, NUnitInd):
            return UnitInd(q(lvl, n.motive), q(lvl, n.handler), qn(n.scrutinee))
        if isinstance(n, NIdInd):
            return IdInd(q(lvl, n.motive), q(lvl, n.handler), q(lvl, n.lhs), q(lvl, n.rhs), qn(n.path))
        if isinstance(n, NBasedIdInd):
            return BasedIdInd(
                q(lvl, n.type), q(lvl, n.base), q(lvl, n.motive), q(lvl, n.handler), q(lvl, n.endpoint), qn(n.path)
            )
        raise KernelError(f"cannot read back {type(n).__name__}")

    def conv(self, lvl: int, a: Value, b: Value) -> bool:
        if a is b:
            return True
        if isinstance(a, VDef) or isinstance(b, VDef):
            if (
                isinstance(a, VDef)
                and isinstance(b, VDef)
                and a.name == b.name
                and len(a.args) == len(b.args)
                and all(self.conv(lvl, x, y) for x, y in zip(a.args, b.args))
            ):
                return True
            a, b = self.force(a), self.force(b)
        if isinstance(a, VLam):
            x = NVar(lvl)
            rhs = b.body.apply(self, x) if isinstance(b, VLam) else self._eta(b, x)
            if rhs is None:
                return False
            return self.conv(lvl + 1, a.body.apply(self, x), rhs)
        if isinstance(b, VLam):
            x = NVar(lvl)
            lhs = self._eta(a, x)
            return lhs is not None and self.conv(lvl + 1, lhs, b.body.apply(self, x))
        if type(a) is not type(b):
            return False
        c = self.conv
        if isinstance(a, (VPi, VSigma)):
            if not c(lvl, a.dom, b.dom):
                return False
            x = NVar(lvl)
            return c(lvl + 1, a.cod.apply(self, x), b.cod.apply(self, x))
        if isinstance(a, VUniverse):
            return a.level == b.level
        if isinstance(a, (VNat, VZero, VUnit, VStar, VEmpty)):
            return True
        if isinstance(a, VSucc):
            return c(lvl, a.pred, b.pred)
        if isinstance(a, VPair):
            return c(lvl, a.fst, b.fst) and c(lvl, a.snd, b.snd)
        if isinstance(a, VSum):
            return c(lvl, a.left, b.left) and c(lvl, a.right, b.right)
        if isinstance(a, VInl):
            return c(lvl, a.value, b.value) and c(lvl, a.right, b.right)
        if isinstance(a, VInr):
            return c(lvl, a.value, b.value) and c(lvl, a.left, b.left)
        if isinstance(a, VId):
            return c(lvl, a.type, b.type) and c(lvl, a.lhs, b.lhs) and c(lvl, a.rhs, b.rhs)
        if isinstance(a, VRefl):
            return c(lvl, a.type, b.type) and c(lvl, a.point, b.point)
        if isinstance(a, NVar):
            return a.level == b.level
        if isinstance(a, NConst):
            return a.name == b.name
        if isinstance(a, NApp):
            return c(lvl, a.fn, b.fn) and c(lvl, a.arg, b.arg)
        if isinstance(a, NSigmaInd):
            return c(lvl, a.scrutinee, b.scrutinee) and c(lvl, a.handler, b.handler) and c(lvl, a.motive, b.motive)
        if isinstance(a, NSumInd):
            return (
                c(lvl, a.scrutinee, b.scrutinee)
                and c(lvl, a.on_left, b.on_left)
                and c(lvl, a.on_right, b.on_right)
                and c(lvl, a.motive, b.motive)
            )
        if isinstance(a, (NNatInd, NUnitInd)):
            return c(lvl, a.scrutinee, b.scrutinee) and c(lvl, a.handler, b.handler) and c(lvl, a.motive, b.motive)
        if isinstance(a, NEmptyInd):
            return c(lvl, a.scrutinee, b.scrutinee) and c(lvl, a.motive, b.motive)
        if isinstance(a, NIdInd):
            return (
                c(lvl, a.path, b.path)
                and c(lvl, a.lhs, b.lhs)
                and c(lvl, a.rhs, b.rhs)
                and c(lvl, a.handler, b.handler)
                and c(lvl, a.motive, b.motive)
            )
        if isinstance(a, NBasedIdInd):
            return (
                c(lvl, a.path, b.path)
                and c(lvl, a.type, b.type)
                and c(lvl, a.base, b.base)
                and c(lvl, a.endpoint, b.endpoint)
                and c(lvl, a.handler, b.handler)
                and c(lvl, a.motive, b.motive)
            )
        return False

    def _eta(self, v: Value, x: Value) -> Optional[Value]:
        # only functions eta-expand; anything else cannot equal a lambda
        if isinstance(v, Neutral):
            return NApp(v, x)
        return None


# ---------------------------------------------------------------------------
# typing


@dataclass(frozen=True)
class _Scope:
    names: tuple[str, ...]
    types: tuple[Value, ...]
    env: tuple[Value, ...]

    @property
    def level(self) -> int:
        return len(self.env)

    def bind(self, name: str, ty: Value) -> "_Scope":
        return _Scope(self.names + (name,), self.types + (ty,), self.env + (NVar(len(self.env)),))

    def define(self, name: str, ty: Value, value: Value) -> "_Scope":
        """Bind ``name`` to a known value, as a let would."""
        return _Scope(self.names + (name,), self.types + (ty,), self.env + (value,))


EMPTY_SCOPE = _Scope((), (), ())


class Checker(Evaluator):
    """Bidirectional checker over values.  ``infer`` for eliminations and
    annotated forms; ``check`` handles lambdas, pairs and injections against a
    known type and otherwise falls back to inference plus conversion."""

    def __init__(self, env: Environment, fuel: Optional[Fuel] = None):
        super().__init__(env, fuel)

    # -- helpers -----------------------------------------------------------

    def _show(self, sc: _Scope, v: Value) -> str:
        from .surface import print_term

        try:
            return print_term(self.quote(sc.level, v, fold=True), list(sc.names))
        except FuelExhausted:
            raise
        except Exception:  # pragma: no cover - diagnostics only
            return f"<{type(v).__name__}>"

    def _mismatch(self, sc: _Scope, t: Term, expected: Value, actual: Value) -> TypeMismatch:
        exp, act = self._show(sc, expected), self._show(sc, actual)
        return TypeMismatch(
            f"type mismatch: expected {exp}, got {act}", t, sc.names, expected=exp, actual=act
        )

    def _universe(self, sc: _Scope, t: Term) -> int:
        ty = self.force(self.infer(sc, t))
        if not isinstance(ty, VUniverse):
            raise UniverseMismatch(f"expected a type, but this term has type {self._show(sc, ty)}", t, sc.names)
        return ty.level

    def _fresh(self, sc: _Scope) -> Value:
        return NVar(sc.level)

    def _motive(self, sc: _Scope, motive: Term, what: str) -> tuple[Value, Value]:
        """Return (motive value, its domain) for a one-argument family."""
        mty = self.force(self.infer(sc, motive))
        if not isinstance(mty, VPi):
            raise MotiveMismatch(f"{what} motive must be a type family, got {self._show(sc, mty)}", motive, sc.names)
        cod = self.force(mty.cod.apply(self, self._fresh(sc)))
        if not isinstance(cod, VUniverse):
            raise MotiveMismatch(f"{what} motive must land in a universe", motive, sc.names)
        return self.eval(motive, sc.env), self.force(mty.dom)

    # -- inference ---------------------------------------------------------

    def infer(self, sc: _Scope, t: Term) -> Value:
        if isinstance(t, Var):
            if t.index >= len(sc.types):
                raise UnboundVariable(f"unbound variable index {t.index}", t, sc.names)
            return sc.types[len(sc.types) - 1 - t.index]
        if isinstance(t, Const):
            return self.constant_type(t.name)
        if isinstance(t, Universe):
            return VUniverse(t.level + 1)
        if isinstance(t, (Pi, Sigma)):
            i = self._universe(sc, t.domain)
            inner = sc.bind("_", self.eval(t.domain, sc.env))
            j = self._universe(inner, t.codomain)
            return VUniverse(max(i, j))
        if isinstance(t, Lambda):
            self._universe(sc, t.domain)
            dom = self.eval(t.domain, sc.env)
            inner = sc.bind("_", dom)
            body_ty = self.quote(inner.level, self.infer(inner, t.body), fold=True)
            return VPi(dom, TermClosure(sc.env, body_ty))
        if isinstance(t, App) and isinstance(t.fn, Lambda):
            # a redex: check the lambda abstractly, then read the result type
            # off the body with the argument substituted (no read-back needed)
            self._universe(sc, t.fn.domain)
            dom = self.eval(t.fn.domain, sc.env)
            self.infer(sc.bind("_", dom), t.fn.body)
            self.check(sc, t.arg, dom)
            return self.infer(sc.define("_", dom, self.eval(t.arg, sc.env)), t.fn.body)
        if isinstance(t, App):
            fty = self.force(self.infer(sc, t.fn))
            if not isinstance(fty, VPi):
                raise NotAFunction(f"applying a term of type {self._show(sc, fty)}", t, sc.names)
            self.check(sc, t.arg, fty.dom)
            return fty.cod.apply(self, self.eval(t.arg, sc.env))
        if isinstance(t, Pair):
            a = self.infer(sc, t.first)
            b = self.infer(sc, t.second)
            return VSigma(a, _const(b))
        if isinstance(t, (Nat, Unit, Empty)):
            return VUniverse(0)
        if isinstance(t, Zero):
            return VNAT
        if isinstance(t, Succ):
            self.check(sc, t.pred, VNAT)
            return VNAT
        if isinstance(t, Star):
            return VUNIT
        if isinstance(t, Sum):
            return VUniverse(max(self._universe(sc, t.left), self._universe(sc, t.right)))
        if isinstance(t, Inl):
            a = self.infer(sc, t.value)
            self._universe(sc, t.right)
            return VSum(a, self.eval(t.right, sc.env))
        if isinstance(t, Inr):
            b = self.infer(sc, t.value)
            self._universe(sc, t.left)
            return VSum(self.eval(t.left, sc.env), b)
        if isinstance(t, Id):
            if t.type is None:
                raise KernelError("unelaborated equation: `a = b` needs its type inferred first", t, sc.names)
            i = self._universe(sc, t.type)
            ty = self.eval(t.type, sc.env)
            self.check(sc, t.lhs, ty)
            self.check(sc, t.rhs, ty)
            return VUniverse(i)
        if isinstance(t, Refl):
            self._universe(sc, t.type)
            ty = self.eval(t.type, sc.env)
            self.check(sc, t.point, ty)
            x = self.eval(t.point, sc.env)
            return VId(ty, x, x)
        if isinstance(t, SigmaInd):
            return self._infer_sigma_ind(sc, t)
        if isinstance(t, SumInd):
            return self._infer_sum_ind(sc, t)
        if isinstance(t, NatInd):
            m, dom = self._motive(sc, t.motive, "nat-ind")
            if not isinstance(dom, VNat):
                raise MotiveMismatch("nat-ind motive must be a family over N", t.motive, sc.names)
            base, step = self._nat_handler_type(m)
            self.check(sc, t.handler, VSigma(base, _const(step)))
            self.check(sc, t.scrutinee, VNAT)
            return self.apply(m, self.eval(t.scrutinee, sc.env))
        if isinstance(t, EmptyInd):
            m, dom = self._motive(sc, t.motive, "empty-ind")
            if not isinstance(dom, VEmpty):
                raise MotiveMismatch("empty-ind motive must be a family over Empty", t.motive, sc.names)
            self.check(sc, t.scrutinee, VEMPTY)
            return self.apply(m, self.eval(t.scrutinee, sc.env))
        if isinstance(t, UnitInd):
            m, dom = self._motive(sc, t.motive, "unit-ind")
            if not isinstance(dom, VUnit):
                raise MotiveMismatch("unit-ind motive must be a family over Unit", t.motive, sc.names)
            self.check(sc, t.handler, self.apply(m, VSTAR))
            self.check(sc, t.scrutinee, VUNIT)
            return self.apply(m, self.eval(t.scrutinee, sc.env))
        if isinstance(t, IdInd):
            return self._infer_id_ind(sc, t)
        if isinstance(t, BasedIdInd):
            return self._infer_based_ind(sc, t)
        raise KernelError(f"cannot infer a type for {type(t).__name__}", t, sc.names)

    def _infer_sigma_ind(self, sc: _Scope, t: SigmaInd) -> Value:
        m, dom = self._motive(sc, t.motive, "sigma-ind")
        if not isinstance(dom, VSigma):
            raise MotiveMismatch(
                f"sigma-ind motive must be a family over a Sigma type, got {self._show(sc, dom)}", t.motive, sc.names
            )
        handler_ty = VPi(
            dom.dom,
            FnClosure(lambda x: VPi(dom.cod.apply(self, x), FnClosure(lambda y: self.apply(m, VPair(x, y))))),
        )
        self.check(sc, t.handler, handler_ty)
        self.check(sc, t.scrutinee, dom)
        return self.apply(m, self.eval(t.scrutinee, sc.env))

    def _infer_sum_ind(self, sc: _Scope, t: SumInd) -> Value:
        m, dom = self._motive(sc, t.motive, "sum-ind")
        if not isinstance(dom, VSum):
            raise MotiveMismatch(
                f"sum-ind motive must be a family over a sum type, got {self._show(sc, dom)}", t.motive, sc.names
            )
        left_ty = VPi(dom.left, FnClosure(lambda x: self.apply(m, VInl(x, dom.right))))
        right_ty = VPi(dom.right, FnClosure(lambda y: self.apply(m, VInr(y, dom.left))))
        self.check(sc, t.on_left, left_ty)
        self.check(sc, t.on_right, right_ty)
        self.check(sc, t.scrutinee, dom)
        return self.apply(m, self.eval(t.scrutinee, sc.env))

    def _infer_id_ind(self, sc: _Scope, t: IdInd) -> Value:
        mty = self.force(self.infer(sc, t.motive))
        bad = MotiveMismatch(
            f"id-ind motive must have type (x y : A) -> Id A x y -> U, got {self._show(sc, mty)}", t.motive, sc.names
        )
        if not isinstance(mty, VPi):
            raise bad
        a_ty = mty.dom
        x = NVar(sc.level)
        y = NVar(sc.level + 1)
        p = NVar(sc.level + 2)
        second = self.force(mty.cod.apply(self, x))
        if not isinstance(second, VPi) or not self.conv(sc.level + 1, second.dom, a_ty):
            raise bad
        third = self.force(second.cod.apply(self, y))
        if not isinstance(third, VPi) or not self.conv(sc.level + 2, third.dom, VId(a_ty, x, y)):
            raise bad
        if not isinstance(self.force(third.cod.apply(self, p)), VUniverse):
            raise bad
        m = self.eval(t.motive, sc.env)
        self.check(sc, t.handler, VPi(a_ty, FnClosure(lambda z: self.apply(self.apply(self.apply(m, z), z), VRefl(a_ty, z)))))
        self.check(sc, t.lhs, a_ty)
        self.check(sc, t.rhs, a_ty)
        lhs = self.eval(t.lhs, sc.env)
        rhs = self.eval(t.rhs, sc.env)
        self.check(sc, t.path, VId(a_ty, lhs, rhs))
        return self.apply(self.apply(self.apply(m, lhs), rhs), self.eval(t.path, sc.env))

    def _infer_based_ind(self, sc: _Scope, t: BasedIdInd) -> Value:
        self._universe(sc, t.type)
        a_ty = self.eval(t.type, sc.env)
        self.check(sc, t.base, a_ty)
        base = self.eval(t.base, sc.env)
        mty = self.force(self.infer(sc, t.motive))
        bad = MotiveMismatch(
            f"based-ind motive must have type (x : A) -> Id A a x -> U, got {self._show(sc, mty)}", t.motive, sc.names
        )
        if not isinstance(mty, VPi) or not self.conv(sc.level, mty.dom, a_ty):
            raise bad
        x = NVar(sc.level)
        second = self.force(mty.cod.apply(self, x))
        if not isinstance(second, VPi) or not self.conv(sc.level + 1, second.dom, VId(a_ty, base, x)):
            raise bad
        if not isinstance(self.force(second.cod.apply(self, NVar(sc.level + 1))), VUniverse):
            raise bad
        m = self.eval(t.motive, sc.env)
        self.check(sc, t.handler, self.apply(self.apply(m, base), VRefl(a_ty, base)))
        self.check(sc, t.endpoint, a_ty)
        end = self.eval(t.endpoint, sc.env)
        self.check(sc, t.path, VId(a_ty, base, end))
        return self.apply(self.apply(m, end), self.eval(t.path, sc.env))

    # -- checking ----------------------------------------------------------

    def check(self, sc: _Scope, t: Term, expected: Value) -> None:
        expected = self.force(expected)
        if isinstance(t, Lambda) and isinstance(expected, VPi):
            self._universe(sc, t.domain)
            dom = self.eval(t.domain, sc.env)
            if not self.conv(sc.level, dom, expected.dom):
                raise AnnotationMismatch(
                    f"lambda annotated with {self._show(sc, dom)} where {self._show(sc, expected.dom)} is expected",
                    t,
                    sc.names,
                )
            x = self._fresh(sc)
            self.check(sc.bind("_", expected.dom), t.body, expected.cod.apply(self, x))
            return
        if isinstance(t, Pair) and isinstance(expected, VSigma):
            self.check(sc, t.first, expected.dom)
            self.check(sc, t.second, expected.cod.apply(self, self.eval(t.first, sc.env)))
            return
        if isinstance(t, Inl) and isinstance(expected, VSum):
            self.check(sc, t.value, expected.left)
            self._universe(sc, t.right)
            if not self.conv(sc.level, self.eval(t.right, sc.env), expected.right):
                raise AnnotationMismatch("inl annotation disagrees with the expected sum type", t, sc.names)
            return
        if isinstance(t, Inr) and isinstance(expected, VSum):
            self.check(sc, t.value, expected.right)
            self._universe(sc, t.left)
            if not self.conv(sc.level, self.eval(t.left, sc.env), expected.left):
                raise AnnotationMismatch("inr annotation disagrees with the expected sum type", t, sc.names)
            return
        actual = self.infer(sc, t)
        if not self.conv(sc.level, actual, expected):
            raise self._mismatch(sc, t, expected, actual)

    # -- scopes ------------------------------------------------------------

    def scope(self, ctx: Context, checked: bool = True) -> _Scope:
        sc = EMPTY_SCOPE
        seen: set[str] = set()
        for name, ty in ctx:
            if checked:
                if name in seen and name != "_":
                    raise DuplicateName(f"context declares {name!r} twice", ty, sc.names)
                seen.add(name)
                try:
                    self._universe(sc, ty)
                except FuelExhausted:
                    raise
                except KernelError as exc:
                    raise IllFormedEntryType(f"type of {name!r} is not a type: {exc.message}", ty, sc.names) from exc
            sc = sc.bind(name, self.eval(ty, sc.env))
        return sc

    # -- elaboration of `a = b` sugar --------------------------------------

    def elaborate(self, sc: _Scope, t: Term) -> Term:
        from .syntax import map_term

        def go(u: Term, s: _Scope) -> Term:
            if isinstance(u, (Pi, Sigma, Lambda)):
                dom = go(u.domain, s)
                inner = s.bind("_", self.eval(dom, s.env))
                rest = go(u.codomain if not isinstance(u, Lambda) else u.body, inner)
                return type(u)(dom, rest)
            if isinstance(u, Id) and u.type is None:
                lhs = go(u.lhs, s)
                rhs = go(u.rhs, s)
                ty = self.quote(s.level, self.infer(s, lhs), fold=True)
                return Id(ty, lhs, rhs)
            return map_term(u, lambda c, _d: go(c, s))

        return go(t, sc)


# ---------------------------------------------------------------------------
# public API


def _fuel(fuel: Union[Fuel, int, None]) -> Fuel:
    if isinstance(fuel, Fuel):
        return fuel
    return Fuel(DEFAULT_FUEL if fuel is None else fuel)


def normalize(env: Environment, ctx: Context, t: Term, fuel: Union[Fuel, int, None] = None) -> Term:
    ev = Evaluator(env, _fuel(fuel))
    scope_env = tuple(NVar(i) for i in range(len(ctx)))
    return ev.quote(len(ctx), ev.eval(t, scope_env))


def def_eq(env: Environment, ctx: Context, a: Term, b: Term, fuel: Union[Fuel, int, None] = None) -> bool:
    ev = Evaluator(env, _fuel(fuel))
    scope_env = tuple(NVar(i) for i in range(len(ctx)))
    return ev.conv(len(ctx), ev.eval(a, scope_env), ev.eval(b, scope_env))


def infer(env: Environment, ctx: Context, t: Term, fuel: Union[Fuel, int, None] = None) -> Term:
    ch = Checker(env, _fuel(fuel))
    sc = ch.scope(ctx, checked=False)
    return ch.quote(sc.level, ch.infer(sc, t))


def check(env: Environment, ctx: Context, t: Term, expected: Term, fuel: Union[Fuel, int, None] = None) -> None:
    """Raise a KernelError unless ``t`` has type ``expected`` in ``ctx``."""
    ch = Checker(env, _fuel(fuel))
    sc = ch.scope(ctx, checked=False)
    ch._universe(sc, expected)
    ch.check(sc, t, ch.eval(expected, sc.env))


def check_type(env: Environment, ctx: Context, t: Term, fuel: Union[Fuel, int, None] = None) -> int:
    """Return the universe level of the type ``t``."""
    ch = Checker(env, _fuel(fuel))
    sc = ch.scope(ctx, checked=False)
    return ch._universe(sc, t)


def check_context(env: Environment, ctx: Context, fuel: Union[Fuel, int, None] = None) -> None:
    Checker(env, _fuel(fuel)).scope(ctx, checked=True)


def elaborate(env: Environment, ctx: Context, t: Term, fuel: Union[Fuel, int, None] = None) -> Term:
    """Fill in the type of every `a = b` equation by inferring ``a``."""
    ch = Checker(env, _fuel(fuel))
    return ch.elaborate(ch.scope(ctx, checked=False), t)
