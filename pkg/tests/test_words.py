import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import PRESENTATIONS, words
from graphprod import oracle
from graphprod.graph import Graph, GraphError
from graphprod.groups import ModCyclic
from graphprod.words import (
    Presentation, Syllable, Word, WordError, clg, csp, cyclically_reduce, first_set, inverse,
    is_ab_cyclically_reduced, is_cyclically_reduced, is_weakly_cyclically_reduced, last_set, lg, lhat,
    multiply, power, project, pyramid_decompose, pyramid_violations, reduce, restrict, sp,
)

P3 = PRESENTATIONS["path-z2z3z2"]
FREE = PRESENTATIONS["free-z-z"]
ALL = sorted(PRESENTATIONS)
pres_names = st.sampled_from(ALL)


def with_word(max_len=8):
    return pres_names.flatmap(lambda n: words(PRESENTATIONS[n], max_len).map(lambda w: (PRESENTATIONS[n], w)))


def test_parse_and_format():
    w = P3.parse_word("a:1 b:2 c:0 a:1")
    assert w == Word([("a", 1), ("b", 2), ("a", 1)])
    assert P3.format_word(reduce(P3, w)) == "b:2"
    assert P3.parse_word("1") == Word()
    assert P3.format_word(()) == "1"
    for bad in ("a1", "z:1", "a:x"):
        with pytest.raises(WordError):
            P3.parse_word(bad)


def test_missing_factor_rejected():
    with pytest.raises(WordError):
        Presentation(Graph(("a", "b")), {"a": ModCyclic(2)})


def test_identity_example():
    assert reduce(P3, P3.word("a:1 a:1")) == ()


def test_commuting_merge():
    assert reduce(P3, P3.word("a:1 b:1 a:1")) == P3.word("b:1")
    assert reduce(P3, P3.word("a:1 c:1 a:1")) == P3.word("a:1 c:1 a:1")


def test_canonical_order_prefers_lower_vertex():
    assert reduce(P3, P3.word("b:1 a:1")) == P3.word("a:1 b:1")


def test_free_group_reduction():
    assert reduce(FREE, FREE.word("x:2 y:1 y:-1 x:-2 y:3")) == FREE.word("y:3")
    assert power(FREE, FREE.word("x:1 y:1"), 3) == FREE.word("x:1 y:1 x:1 y:1 x:1 y:1")
    assert power(FREE, FREE.word("x:1 y:1"), -1) == FREE.word("y:-1 x:-1")
    assert power(FREE, FREE.word("x:1"), 0) == ()


def test_sets_on_example():
    w = reduce(P3, P3.word("a:1 b:1 c:1"))
    assert first_set(P3, w) == {Syllable("a", 1), Syllable("b", 1)}
    assert last_set(P3, w) == {Syllable("c", 1)}
    assert lhat(P3, w) == {Syllable("c", 1)}
    w2 = reduce(P3, P3.word("c:1 a:1 b:1"))
    assert last_set(P3, w2) == {Syllable("a", 1), Syllable("b", 1)}
    assert lhat(P3, w2) == {Syllable("a", 1), Syllable("b", 2)}
    assert lg(w) == 3 and sp(w) == {"a", "b", "c"}


def test_cyclic_reduction_examples():
    w = reduce(P3, P3.word("c:1 a:1 c:1"))
    assert not is_cyclically_reduced(P3, w)
    assert not is_weakly_cyclically_reduced(P3, w)
    conj, core = cyclically_reduce(P3, w)
    assert conj == P3.word("c:1") and core == P3.word("a:1")


def test_ab_cyclically_reduced_example():
    w = FREE.word("y:1 x:2")
    assert is_ab_cyclically_reduced(FREE, w, "y", "x")
    assert not is_ab_cyclically_reduced(FREE, w, "x", "y")
    assert not is_ab_cyclically_reduced(FREE, (), "y", "x")


def test_pyramid_example():
    w = reduce(P3, P3.word("c:1 a:1 b:1 c:1"))
    d = pyramid_decompose(P3, w)
    assert pyramid_violations(P3, d, w) == []
    assert d.w1 == P3.word("c:1")
    assert csp(P3, w) == {"a", "b"} and clg(P3, w) == 2


def test_project_and_restrict():
    w = P3.word("a:1 c:1 b:1 c:1")
    assert project(P3, w, ["a", "b"]) == P3.word("a:1 b:1")
    assert project(P3, w, ["c"]) == ()
    with pytest.raises(GraphError):
        project(P3, w, ["zz"])
    sub = restrict(P3, ["a", "c"])
    assert sub.vertices == ("a", "c")


@settings(max_examples=150, deadline=None)
@given(with_word(7))
def test_reduce_idempotent_and_in_class(pw):
    p, w = pw
    nf = reduce(p, w)
    assert reduce(p, nf) == nf
    assert all(not p.factors[v].is_identity(g) for v, g in nf)
    if len(w) <= 5:
        assert tuple(nf) in oracle.closure(p, w)


@settings(max_examples=150, deadline=None)
@given(with_word(6), st.data())
def test_multiply_group_laws(pw, data):
    p, w = pw
    u = data.draw(words(p, 5))
    v = data.draw(words(p, 5))
    assert multiply(p, w, u) == reduce(p, list(w) + list(u))
    assert multiply(p, multiply(p, w, u), v) == multiply(p, w, multiply(p, u, v))
    assert multiply(p, w, inverse(p, w)) == ()


@settings(max_examples=100, deadline=None)
@given(with_word(5), st.integers(-4, 6))
def test_power_matches_repeated_product(pw, k):
    p, w = pw
    base = w if k >= 0 else inverse(p, w)
    assert power(p, w, k) == reduce(p, list(base) * abs(k))


@settings(max_examples=120, deadline=None)
@given(with_word(5))
def test_first_last_sets_match_orbit(pw):
    p, w = pw
    nf = reduce(p, w)
    assert first_set(p, nf) == oracle.first_syllables(p, nf)
    assert last_set(p, nf) == oracle.last_syllables(p, nf)


@settings(max_examples=100, deadline=None)
@given(with_word(5))
def test_cyclic_reduction_matches_rotation_closure(pw):
    p, w = pw
    nf = reduce(p, w)
    conj, core = cyclically_reduce(p, nf)
    assert multiply(p, conj, core, inverse(p, conj)) == nf
    assert is_cyclically_reduced(p, core)
    assert len(core) == oracle.min_cyclic_length(p, nf)
    assert is_cyclically_reduced(p, nf) == (len(nf) == oracle.min_cyclic_length(p, nf))


@settings(max_examples=150, deadline=None)
@given(with_word(8))
def test_pyramid_decomposition_is_valid(pw):
    p, w = pw
    nf = reduce(p, w)
    d = pyramid_decompose(p, nf)
    assert pyramid_violations(p, d, nf) == []
    assert csp(p, nf) == sp(d.w2) | sp(d.w3) | sp(d.w2p)


@settings(max_examples=120, deadline=None)
@given(with_word(8), st.data())
def test_project_is_a_homomorphism(pw, data):
    p, w = pw
    u = data.draw(words(p, 6))
    keep = data.draw(st.sets(st.sampled_from(p.vertices)))
    lhs = project(p, multiply(p, w, u), keep)
    rhs = multiply(p, project(p, w, keep), project(p, u, keep))
    assert lhs == rhs
    assert project(p, project(p, w, keep), keep) == project(p, w, keep)


@settings(max_examples=60, deadline=None)
@given(with_word(10), st.integers(0, 10 ** 6))
def test_random_maximal_sequences_agree(pw, seed):
    p, w = pw
    rng = random.Random(seed)
    nf = reduce(p, w)
    for _ in range(3):
        final, _ = oracle.random_maximal_sequence(p, w, rng)
        assert len(final) == len(nf)
        assert reduce(p, final) == nf


def test_exhaustive_equality_small():
    words3 = list(oracle.all_words(P3, 3))
    keys = {w: oracle.closure_key(P3, w) for w in words3}
    nfs = {w: reduce(P3, w) for w in words3}
    for a in words3[:60]:
        for b in words3:
            assert (keys[a] == keys[b]) == (nfs[a] == nfs[b])
