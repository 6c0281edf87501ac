import random

import pytest
from hypothesis import given, settings, strategies as st

from invmon.families import FamilySpec, build_presentation, en_word, expected_sgamma_en
from invmon.graphs import accepts, canonical_form, isomorphic
from invmon.munn import FreeContext, fim_equal, fim_leq, munn_tree
from invmon.stephen import (GLUE_R, GLUE_S, Budget, Presentation, Status, Verdict, approximants,
                            closure, eq, expansions_applicable, is_idempotent, leq,
                            parse_presentation, r_class_size, record_closures, stephen_step)
from invmon.words import Word

from conftest import random_word, words

FREE = Presentation.free("abc")
S2 = build_presentation(FamilySpec.st(2))
S3 = build_presentation(FamilySpec.st(3))
T1 = build_presentation(FamilySpec.ti(1))
W = S2.word


def test_presentation_text_format():
    p = parse_presentation("""
        # comment line
        letters: a b c
        rel: c a = a          # trailing comment
        rel: c B B C b b = c B B b b C
    """)
    assert p == S2
    assert parse_presentation(p.to_text()) == p


@pytest.mark.parametrize("text", [
    "rel: a = b",
    "letters: a b\nrel: a = c",
    "letters: a b\nrel: a b",
    "letters: a b\nrel: a = b = a",
    "letters: a b\nletters: a",
    "letters: a b\nfoo: a",
    "letters: a A",
])
def test_presentation_text_errors(text):
    with pytest.raises(ValueError):
        parse_presentation(text)


def test_empty_side_relation():
    p = parse_presentation("letters: a b\nrel: a a = 1")
    assert eq(p, p.word("aaa"), p.word("a")) is Verdict.YES
    assert eq(p, p.word("A"), p.word("a")) is Verdict.YES


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(0, 10)
    with pytest.raises(ValueError):
        Budget(10, 0)


def test_sites_free_presentation():
    assert expansions_applicable(FREE, munn_tree(FreeContext.of("abc"), W("abcCBA"))) == []


def test_sites_en_munn_tree():
    mt = munn_tree(FreeContext.of("abc"), en_word(2, 1))
    sites = expansions_applicable(S2, mt)
    # ca = a: the a-path exists at both a-edges, the ca-path is missing
    assert sites == [(0, GLUE_R, 0, 1), (0, GLUE_R, 3, 4)]


def test_sites_closed_automaton():
    assert expansions_applicable(S2, expected_sgamma_en(2, 1)) == []
    assert expansions_applicable(S3, expected_sgamma_en(3, 2)) == []


def test_step_fixed_point():
    a = expected_sgamma_en(2, 2)
    assert stephen_step(S2, a) is a


def test_step_ti1_glues_c_loop():
    mt = munn_tree(FreeContext.of("abc"), T1.word("aba"))
    a = stephen_step(T1, mt)
    assert a.vertex_count == 4
    assert a.loops(2) == [a.terminal]


def test_steps_reach_sgamma_e1():
    seq = approximants(S2, en_word(2, 1), 10)
    assert isomorphic(seq[-1], expected_sgamma_en(2, 1))
    assert stephen_step(S2, seq[-1]) is seq[-1]


def test_closure_free():
    c = closure(FREE, W("abBc"))
    assert c.status is Status.EXACT and c.rounds_used == 1
    assert c.automaton == munn_tree(FreeContext.of("abc"), W("abBc"))


@pytest.mark.parametrize("t,n", [(2, 1), (3, 2)])
def test_closure_en(t, n):
    p = build_presentation(FamilySpec.st(t))
    c = closure(p, en_word(t, n))
    assert c.exact
    assert c.automaton.vertex_count == t * n + 3
    assert len(c.automaton.loops(2)) == n + 2
    assert isomorphic(c.automaton, expected_sgamma_en(t, n))


def test_closure_truncates():
    c = closure(S2, en_word(2, 3), Budget(max_rounds=2))
    assert c.status is Status.TRUNCATED and c.rounds_used == 2
    assert accepts(c.automaton, en_word(2, 3))
    c = closure(S2, en_word(2, 3), Budget(max_vertices=3))
    assert c.status is Status.TRUNCATED


def test_closure_rejects_foreign_letters():
    with pytest.raises(ValueError):
        closure(Presentation.free("a"), W("b"))


def test_eq_examples():
    assert eq(S2, W("ca"), W("a")) is Verdict.YES
    for i in (1, 2, 3):
        p = build_presentation(FamilySpec.ti(i))
        u = Word([0] + [2] * i + [0])
        assert eq(p, u, u + Word([4])) is Verdict.YES
    assert eq(FREE, W("a"), W("b")) is Verdict.NO


def test_leq_examples():
    for n in (1, 2, 3):
        assert leq(S2, en_word(2, n), W("acA")) is Verdict.YES
    assert leq(S2, W("abc"), W("abc")) is Verdict.YES
    assert leq(FREE, W("a"), W("aA")) is Verdict.NO


def test_is_idempotent_examples():
    assert is_idempotent(S2, en_word(2, 1)) is Verdict.YES
    assert is_idempotent(FREE, W("a")) is Verdict.NO
    # A(aca^-1) has four vertices and no basepoint
    c = closure(S2, W("acA"))
    assert c.automaton.vertex_count == 4 and c.automaton.initial != c.automaton.terminal
    assert is_idempotent(S2, W("acA")) is Verdict.NO
    assert is_idempotent(S2, W("acA") + W("acA").inverse()) is Verdict.YES


def test_unknown_verdicts_on_truncation():
    tiny = Budget(max_rounds=1)
    # after one round no c-loop exists yet, so neither membership is certified
    assert leq(S2, en_word(2, 1), W("acA"), tiny) is Verdict.UNKNOWN
    assert eq(S2, en_word(2, 1), en_word(2, 1) + W("c"), tiny) is Verdict.UNKNOWN
    assert r_class_size(S2, en_word(2, 1), tiny) is None
    # positive answers from an approximant are still sound
    assert leq(S2, en_word(2, 1), en_word(2, 1), tiny) is Verdict.YES


def test_r_class_size_examples():
    assert r_class_size(FREE, Word()) == 1
    assert r_class_size(S2, en_word(2, 1)) == 5
    assert r_class_size(FREE, W("a")) == 2


def test_record_closures():
    with record_closures() as log:
        closure(S2, W("ab"))
        eq(S2, W("a"), W("ca"))
    assert len(log) == 3
    assert all(r.exact for _, _, r in log)


@settings(max_examples=60, deadline=None)
@given(words(3, 8))
def test_approximants_are_monotone(w):
    seq = approximants(S2, w, 8)
    probes = [w] + [Word(x) for x in ((4,), (0, 4, 1), (2, 3), (4, 5))]
    for a in seq:
        assert accepts(a, w)
    for a, b in zip(seq, seq[1:]):
        for v in probes:
            if accepts(a, v):
                assert accepts(b, v)


@settings(max_examples=60, deadline=None)
@given(words(3, 8))
def test_exact_closure_is_fixed_point(w):
    c = closure(S2, w)
    assert c.exact
    assert expansions_applicable(S2, c.automaton) == []
    assert isomorphic(stephen_step(S2, c.automaton), c.automaton)


@settings(max_examples=60, deadline=None)
@given(words(3, 8), st.integers(0, 2**32))
def test_round_does_not_depend_on_glue_order(w, seed):
    a = munn_tree(FreeContext.of("abc"), w)
    for _ in range(4):
        base = stephen_step(S2, a)
        shuffled = stephen_step(S2, a, random.Random(seed))
        assert isomorphic(base, shuffled)
        a = base


@settings(max_examples=40, deadline=None)
@given(words(3, 6), words(3, 6), words(3, 6))
def test_eq_transitive(u, v, z):
    if eq(S2, u, v) is Verdict.YES and eq(S2, v, z) is Verdict.YES:
        assert eq(S2, u, z) is Verdict.YES


@settings(max_examples=60, deadline=None)
@given(words(3, 6), words(3, 6))
def test_eq_iff_leq_both_ways(u, v):
    both = leq(S2, u, v) is Verdict.YES and leq(S2, v, u) is Verdict.YES
    assert (eq(S2, u, v) is Verdict.YES) == both


@settings(max_examples=60, deadline=None)
@given(words(3, 8))
def test_idempotent_iff_equal_to_domain(w):
    assert is_idempotent(S2, w) == eq(S2, w + w.inverse(), w)


@settings(max_examples=60, deadline=None)
@given(words(3, 8), words(3, 8))
def test_free_presentation_agrees_with_munn(u, v):
    ctx = FreeContext.of("abc")
    assert (eq(FREE, u, v) is Verdict.YES) == fim_equal(ctx, u, v)
    assert (leq(FREE, u, v) is Verdict.YES) == fim_leq(ctx, u, v)


def test_a_edges_bounded_by_munn_tree(rng):
    ctx = FreeContext.of("abc")
    for _ in range(100):
        w = random_word(rng, 3, 10)
        c = closure(S2, w)
        assert c.exact
        assert c.automaton.count_edges(0) <= munn_tree(ctx, w).count_edges(0)


def test_bc_words_have_no_a_edges_or_c_loops(rng):
    for _ in range(60):
        w = Word(rng.choice((2, 3, 4, 5)) for _ in range(rng.randint(0, 12)))
        for p in (S2, S3):
            c = closure(p, w)
            assert c.exact
            assert c.automaton.count_edges(0) == 0
            assert c.automaton.loops(2) == []


def test_closure_is_canonical_invariant(rng):
    # equal elements have identical canonical Schützenberger automata
    for n in (1, 2):
        e = en_word(2, n)
        assert canonical_form(closure(S2, e).automaton) == canonical_form(closure(S2, e + W("c")).automaton)
