from hypothesis import given, settings, strategies as st

from dchain import kernel
from dchain.kernel import FuelExhausted
from dchain.syntax import App, Context, Environment, Lambda, Pi, alpha_eq

from termgen import TermGen, random_type, random_typed_term

TOP = Context()
EMPTY = Environment()
seeds = st.integers(0, 2**32 - 1)


CORPUS_FUEL = 50_000


def corpus_terms(env):
    """Every closed term of the corpus: entry types and definition bodies."""
    for entry in env:
        yield entry.name + ":type", entry.type, None
        if entry.body is not None:
            yield entry.name, entry.body, entry.type


_corpus_runs: dict[int, tuple[int, list[str]]] = {}


def check_corpus(env) -> tuple[int, list[str]]:
    if id(env) not in _corpus_runs:
        _corpus_runs[id(env)] = _check_corpus(env)
    return _corpus_runs[id(env)]


def _check_corpus(env) -> tuple[int, list[str]]:
    """Normalize every corpus term under a fixed budget.  Returns the number
    of terms checked and the names whose normal form outgrew the budget; any
    violation of idempotence or subject reduction raises."""
    checked, too_large = 0, []
    for name, term, ty in corpus_terms(env):
        try:
            nf = kernel.normalize(env, TOP, term, CORPUS_FUEL)
        except FuelExhausted:
            too_large.append(name)
            continue
        assert alpha_eq(kernel.normalize(env, TOP, nf), nf), name
        if ty is not None:
            kernel.check(env, TOP, nf, ty)
        checked += 1
    return checked, too_large


def test_corpus_normal_forms_are_idempotent_and_typed(env):
    checked, too_large = check_corpus(env)
    # the skipped ones are coherence proofs whose unshared normal forms run
    # to millions of symbols; everything else must be covered
    assert len(too_large) <= 15, too_large
    assert checked >= 280


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_normalize_is_idempotent(seed):
    t, _ = random_typed_term(seed)
    nf = kernel.normalize(EMPTY, TOP, t)
    assert alpha_eq(kernel.normalize(EMPTY, TOP, nf), nf)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_subject_reduction(seed):
    t, ty = random_typed_term(seed)
    kernel.check(EMPTY, TOP, t, ty)
    kernel.check(EMPTY, TOP, kernel.normalize(EMPTY, TOP, t), ty)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_def_eq_is_a_congruence(rng):
    gen = TermGen(rng, 3)
    a_ty, b_ty = random_type(rng), random_type(rng)
    a = gen.term([], a_ty)
    b = kernel.normalize(EMPTY, TOP, a)
    f = gen.term([], Pi(a_ty, b_ty))
    assert kernel.def_eq(EMPTY, TOP, a, b)
    assert kernel.def_eq(EMPTY, TOP, App(f, a), App(f, b))


@settings(max_examples=200, deadline=None)
@given(seeds, seeds)
def test_def_eq_is_an_equivalence(s1, s2):
    a, ty = random_typed_term(s1)
    b = kernel.normalize(EMPTY, TOP, a)
    assert kernel.def_eq(EMPTY, TOP, a, a)
    assert kernel.def_eq(EMPTY, TOP, a, b) and kernel.def_eq(EMPTY, TOP, b, a)
    # transitivity through a beta-expanded copy
    c = App(Lambda(ty, b), b)
    assert kernel.def_eq(EMPTY, TOP, b, c) and kernel.def_eq(EMPTY, TOP, a, c)
    other, other_ty = random_typed_term(s2)
    if other_ty == ty:
        assert kernel.def_eq(EMPTY, TOP, a, other) == kernel.def_eq(EMPTY, TOP, other, a)
