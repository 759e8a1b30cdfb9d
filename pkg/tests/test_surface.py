import pytest
from hypothesis import given, settings, strategies as st

from dchain import stdlib
from dchain.chain import LinkKind
from dchain.surface import (
    ParseError,
    Theorem,
    UnboundIdentifier,
    parse_file,
    parse_telescope,
    parse_term,
    print_chain,
    print_term,
)
from dchain.syntax import App, Const, Lambda, Nat, Pair, Pi, Refl, Star, Succ, Var, Zero, alpha_eq

from termgen import random_typed_term


def test_parse_examples():
    assert parse_term(r"\x:N. succ x") == Lambda(Nat(), Succ(Var(0)))
    assert parse_term("(x:A) -> B x") == Pi(Const("A"), App(Const("B"), Var(0)))
    assert parse_term("refl N zero") == Refl(Nat(), Zero())


def test_print_examples():
    assert print_term(Lambda(Nat(), Var(0))) == r"\x0:N. x0"
    assert print_term(Pair(Zero(), Star())) == "(zero , star)"


def test_numerals_and_arrows():
    assert parse_term("2") == Succ(Succ(Zero()))
    assert parse_term("N -> N -> N") == Pi(Nat(), Pi(Nat(), Nat()))


def test_syntax_error_has_a_position():
    with pytest.raises(ParseError) as info:
        parse_term("(\\x:N. succ x")
    assert ":1:" in str(info.value)


def test_unknown_identifier_with_known_set():
    with pytest.raises(UnboundIdentifier):
        parse_term("foo zero", known=["bar"])


def test_theorem_markers_map_to_kinds():
    text = """
axiom A : U0
axiom B : U0
axiom f : B -> A
axiom e : equiv B B
axiom b : B
theorem t : A
proof
  A
<- f  "apply f"
  B
== "nothing to unfold"
  B
~= e
  B
:: b
qed
"""
    parsed = parse_file(text, None)  # `equiv` left as a free constant
    thm = parsed.declarations[-1]
    assert isinstance(thm, Theorem)
    assert [l.kind for l in thm.chain.links] == [LinkKind.CONSEQUENCE, LinkKind.DEFEQ, LinkKind.EQUIV]
    assert thm.chain.links[0].justification == "apply f"
    assert thm.chain.closing.inhabitant == Const("b")


def test_forward_reference_is_unbound():
    with pytest.raises(UnboundIdentifier):
        parse_file("def a : N := b\ndef b : N := zero\n")


def test_empty_file():
    assert len(parse_file("")) == 0
    assert len(parse_file("-- only a comment\n")) == 0


def test_witness_continues_on_deeper_indented_lines():
    text = """
axiom A : U0
theorem t : A -> A
proof
  A -> A
<- \\f : A -> A.
       f  "continued witness"
  A -> A
:: \\a : A. a
qed
"""
    thm = parse_file(text).declarations[-1]
    link = thm.chain.links[0]
    assert link.witness == Lambda(Pi(Const("A"), Const("A")), Var(0))
    assert link.justification == "continued witness"


def test_telescope():
    ctx = parse_telescope("(A : U0) (x y : A)")
    assert ctx.names() == ["A", "x", "y"]
    assert ctx.entries[2][1] == Var(1)


def _corpus_terms(env):
    for entry in env:
        yield [], entry.type
        if entry.body is not None:
            yield [], entry.body
        if entry.record is not None:
            chain = entry.record.chain
            names = chain.context.names()
            yield names, chain.goal
            for link in chain.links:
                yield names, link.lower
                if link.witness is not None:
                    yield names, link.witness
            if chain.closing is not None:
                yield names, chain.closing.inhabitant


def test_corpus_round_trip(env):
    count = 0
    for names, t in _corpus_terms(env):
        text = print_term(t, names)
        back = parse_term(text, names, env.names())
        assert alpha_eq(back, t), text
        assert print_term(back, names) == text
        count += 1
    assert count > 500


def test_raw_chains_round_trip(env):
    # the unelaborated chains as written, `a = b` sugar included
    known: list[str] = []
    for name in stdlib.manifest_files():
        for decl in parse_file(stdlib.read_source(name), known, name):
            known.append(decl.name)
            if isinstance(decl, Theorem):
                names = decl.telescope.names()
                for link in decl.chain.links:
                    assert alpha_eq(parse_term(print_term(link.lower, names), names), link.lower)


def test_printed_chain_reparses(env):
    for entry in env.theorems():
        chain = entry.record.chain
        names = chain.context.names()
        binders, scope = [], []
        for n, ty in chain.context:
            binders.append(f"({n} : {print_term(ty, scope)})")
            scope.append(n)
        text = f"theorem copy {' '.join(binders)} : {print_term(chain.goal, names)}\nproof\n{print_chain(chain)}\nqed\n"
        again = parse_file(text, env.names()).declarations[0].chain
        assert len(again.links) == len(chain.links), entry.name
        for a, b in zip(again.links, chain.links):
            assert a.kind is b.kind and alpha_eq(a.lower, b.lower)
            assert (a.witness is None) == (b.witness is None)
            if a.witness is not None:
                assert alpha_eq(a.witness, b.witness)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_terms_round_trip(seed):
    t, ty = random_typed_term(seed)
    for x in (t, ty):
        text = print_term(x)
        assert alpha_eq(parse_term(text), x)
        assert print_term(parse_term(text)) == text
