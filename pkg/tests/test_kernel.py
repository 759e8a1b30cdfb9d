import pytest

from dchain import kernel
from dchain.kernel import ContextError, Fuel, FuelExhausted, KernelError
from dchain.syntax import (
    App,
    Const,
    Context,
    Empty,
    EmptyInd,
    Environment,
    Id,
    IdInd,
    Inl,
    Lambda,
    Nat,
    Pair,
    Pi,
    Refl,
    Sigma,
    SigmaInd,
    Star,
    Succ,
    Sum,
    Unit,
    Universe,
    Var,
    Zero,
    apps,
    numeral,
    shift,
)

from conftest import elab, telescope

EMPTY = Environment()
TOP = Context()


def test_beta():
    t = App(Lambda(Nat(), Succ(Var(0))), Zero())
    assert kernel.normalize(EMPTY, TOP, t) == Succ(Zero())


def test_sigma_computation():
    ctx = Context((("g", Pi(Nat(), Pi(Nat(), Nat()))),))
    motive = Lambda(Sigma(Nat(), Nat()), Nat())
    t = SigmaInd(motive, Var(0), Pair(Zero(), numeral(1)))
    assert kernel.normalize(EMPTY, ctx, t) == apps(Var(0), Zero(), numeral(1))


def test_identity_computation():
    ctx = Context((("g", Pi(Nat(), Nat())),))
    motive = Lambda(Nat(), Lambda(Nat(), Lambda(Id(Nat(), Var(1), Var(0)), Nat())))
    t = IdInd(motive, Var(0), Zero(), Zero(), Refl(Nat(), Zero()))
    assert kernel.normalize(EMPTY, ctx, t) == App(Var(0), Zero())


def test_empty_eliminator_is_inert():
    ctx = Context((("e", Empty()),))
    t = EmptyInd(Lambda(Empty(), Nat()), Var(0))
    assert kernel.normalize(EMPTY, ctx, t) == t


def test_code_on_numerals(env):
    assert kernel.normalize(env, TOP, elab(env, "code 2 2")) == Unit()
    assert kernel.normalize(env, TOP, elab(env, "code 2 3")) == Empty()


def test_eta_at_pi_only(env):
    ctx = telescope(env, "(f : N -> N) (u : N * N)")
    eta = Lambda(Nat(), App(shift(Var(1), 1), Var(0)))
    assert kernel.def_eq(env, ctx, eta, Var(1))
    # no judgmental eta for pairs
    assert not kernel.def_eq(env, ctx, elab(env, "(fst N N u, snd N N u)", ctx), Var(0))


def test_def_eq_basics(env):
    assert not kernel.def_eq(EMPTY, TOP, Zero(), Succ(Zero()))
    ctx = telescope(env, "(A B : U0) (a : A) (b : B)")
    assert kernel.def_eq(env, ctx, elab(env, "pr1 A (\\_ : A. B) (a, b)", ctx), Var(1))


def test_infer_examples():
    assert kernel.infer(EMPTY, TOP, Zero()) == Nat()
    assert kernel.infer(EMPTY, TOP, Refl(Nat(), Zero())) == Id(Nat(), Zero(), Zero())
    assert kernel.infer(EMPTY, TOP, Lambda(Nat(), Var(0))) == Pi(Nat(), Nat())


def test_check_examples():
    kernel.check(EMPTY, TOP, Star(), Unit())
    kernel.check(EMPTY, TOP, Pair(Zero(), Star()), Sigma(Nat(), Unit()))
    kernel.check(EMPTY, TOP, Inl(Zero(), Unit()), Sum(Nat(), Unit()))
    with pytest.raises(KernelError):
        kernel.check(EMPTY, TOP, Star(), Nat())


def test_check_context():
    kernel.check_context(EMPTY, TOP)
    kernel.check_context(EMPTY, Context((("A", Universe(0)), ("x", Var(0)))))
    with pytest.raises(ContextError):
        kernel.check_context(EMPTY, Context((("x", Zero()),)))


def test_universes_are_not_cumulative():
    assert kernel.infer(EMPTY, TOP, Universe(0)) == Universe(1)
    with pytest.raises(KernelError):
        kernel.check(EMPTY, TOP, Nat(), Universe(1))


def test_unannotated_equation_needs_elaboration():
    with pytest.raises(KernelError):
        kernel.infer(EMPTY, TOP, Id(None, Zero(), Zero()))
    assert kernel.elaborate(EMPTY, TOP, Id(None, Zero(), Zero())) == Id(Nat(), Zero(), Zero())


def test_funext_is_inert(env):
    ctx = telescope(env, "(f g : N -> N) (h : homotopy N N f g)")
    t = elab(env, "funext N (\\_ : N. N) f g h", ctx)
    nf = kernel.normalize(env, ctx, t)
    assert Const("funext") in _subterms(nf)


def _subterms(t):
    yield t
    for _, c in t.children():
        yield from _subterms(c)


def test_fuel_exhaustion_is_an_error(env):
    with pytest.raises(FuelExhausted):
        kernel.normalize(env, TOP, elab(env, "code 6 6"), fuel=5)
    fuel = Fuel(10_000)
    kernel.normalize(env, TOP, elab(env, "code 6 6"), fuel)
    assert 0 < fuel.used <= 10_000


# -- independent oracle for the code family ------------------------------------


def code_oracle(m: int, n: int) -> str:
    if m == 0 and n == 0:
        return "Unit"
    if m == 0 or n == 0:
        return "Empty"
    return code_oracle(m - 1, n - 1)


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("n", range(7))
def test_code_matches_oracle(env, m, n):
    t = App(App(Const("code"), numeral(m)), numeral(n))
    expected = {"Unit": Unit(), "Empty": Empty()}[code_oracle(m, n)]
    assert kernel.normalize(env, TOP, t) == expected


# -- glued evaluation -------------------------------------------------------------


def test_same_folded_definition_compares_without_unfolding(env):
    # two copies of a large composite equivalence are equal at the head;
    # conversion must not pay for unfolding either of them
    ctx = telescope(env, "(A : U0) (P : (x : A) -> (y : A) -> x = y -> U0)")
    big = elab(env, "iota_equiv A P", ctx)
    fuel = Fuel(1_000_000)
    assert kernel.def_eq(env, ctx, big, big, fuel)
    assert fuel.used < 50


def test_type_errors_mention_folded_names(env):
    ctx = telescope(env, "(A B : U0) (e : A ~= B)")
    with pytest.raises(KernelError) as info:
        kernel.check(env, ctx, Var(0), elab(env, "B ~= A", ctx))
    assert "equiv" in info.value.message or "~=" in info.value.message


def test_unfolding_is_still_available(env):
    # the folded form and its definition are convertible
    ctx = telescope(env, "(A B : U0) (f g : A -> B)")
    assert kernel.def_eq(env, ctx, elab(env, "homotopy A B f g", ctx), elab(env, "(x : A) -> f x = g x", ctx))
