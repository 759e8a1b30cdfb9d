import pytest
from hypothesis import given, strategies as st

from dchain.surface import parse_term
from dchain.syntax import (
    App,
    Context,
    Entry,
    Environment,
    Lambda,
    Nat,
    Pair,
    Pi,
    ShiftError,
    Succ,
    Var,
    Zero,
    alpha_eq,
    free_indices,
    numeral,
    shift,
    substitute,
)


def test_substitute_examples():
    assert substitute(Var(0), Zero()) == Zero()
    assert substitute(Succ(Var(0)), Zero()) == Succ(Zero())
    assert substitute(Var(1), Zero()) == Var(0)


def test_shift_examples():
    assert shift(Var(0), 1, 0) == Var(1)
    assert shift(Lambda(Nat(), Var(0)), 1, 0) == Lambda(Nat(), Var(0))
    assert shift(Lambda(Nat(), Var(1)), 1, 0) == Lambda(Nat(), Var(2))


def test_negative_shift_of_captured_index_is_refused():
    with pytest.raises(ShiftError):
        shift(Var(0), -1)


def test_alpha_eq_examples():
    assert alpha_eq(Lambda(Nat(), Var(0)), Lambda(Nat(), Var(0)))
    assert not alpha_eq(Zero(), Succ(Zero()))
    assert alpha_eq(parse_term(r"\x:N. x"), parse_term(r"\y:N. y"))


def test_numeral():
    assert numeral(2) == Succ(Succ(Zero()))


def test_environment_rejects_duplicates():
    env = Environment().extend(Entry("a", Nat(), Zero()))
    with pytest.raises(ValueError):
        env.extend(Entry("a", Nat(), Zero()))
    assert "a" in env and env.lookup("b") is None


def test_context_order():
    ctx = Context().extend("A", Nat()).extend("x", Var(0))
    assert ctx.names() == ["A", "x"] and len(ctx) == 2


# random open terms with indices below `scope`
def terms(scope: int, depth: int = 3):
    leaves = [st.just(Zero()), st.just(Nat())]
    if scope:
        leaves.append(st.integers(0, scope - 1).map(Var))
    leaf = st.one_of(*leaves)
    if depth == 0:
        return leaf
    sub = terms(scope, depth - 1)
    under = terms(scope + 1, depth - 1)
    return st.one_of(
        leaf,
        st.builds(Succ, sub),
        st.builds(App, sub, sub),
        st.builds(Pair, sub, sub),
        st.builds(Lambda, sub, under),
        st.builds(Pi, sub, under),
    )


@given(terms(3), st.integers(0, 4), st.integers(0, 3))
def test_shift_composes(t, k, c):
    assert shift(shift(t, k, c), -k, c) == t


@given(terms(3), st.integers(0, 3))
def test_shift_zero_is_identity(t, c):
    assert shift(t, 0, c) == t


@given(terms(2), terms(2))
def test_substituting_into_a_weakened_body_is_identity(t, v):
    assert substitute(shift(t, 1), v) == t


@given(terms(1), terms(0))
def test_substitute_removes_the_bound_index(body, value):
    out = substitute(body, value)
    assert free_indices(out) == set()


@given(terms(2))
def test_substituting_var0_is_identity(t):
    assert substitute(shift(t, 1, 1), Var(0)) == t
