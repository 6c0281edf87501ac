import json
from pathlib import Path

import pytest

from invmon.families import (FamilySpec, ab_i_a, aca_inv, build_presentation, en_word,
                             expected_sgamma_en, replicate, ti_idempotent_form, w_e)
from invmon.graphs import isomorphic
from invmon.stephen import Verdict, closure, eq, parse_presentation

PRESENTATIONS = Path(__file__).resolve().parent.parent / "presentations"


@pytest.mark.parametrize("text,kind,value", [
    ("St2", "St", 2), ("St:3", "St", 3), ("TI1,2,3", "TI", (1, 2, 3)), ("TI:3,1", "TI", (1, 3)),
])
def test_parse_family(text, kind, value):
    f = FamilySpec.parse(text)
    assert f.kind == kind
    assert (f.t if kind == "St" else f.indices) == value
    assert FamilySpec.parse(str(f)) == f


@pytest.mark.parametrize("text", ["St1", "TI", "TI1,1", "TI0", "XY2", "St"])
def test_parse_family_errors(text):
    with pytest.raises(ValueError):
        FamilySpec.parse(text)


def test_presentation_files_match_builders():
    for name, spec in [("st2", "St2"), ("st3", "St3"), ("ti123", "TI1,2,3")]:
        text = (PRESENTATIONS / f"{name}.imp").read_text()
        assert parse_presentation(text) == build_presentation(FamilySpec.parse(spec))


def test_word_builders():
    p = build_presentation(FamilySpec.st(2))
    assert ab_i_a(2) == p.word("abba")
    assert en_word(2, 1) == p.word("abbaABBA")
    assert [len(en_word(3, n)) for n in (1, 2, 3)] == [10, 16, 22]
    assert w_e(1) == p.word("ABAaba")
    assert aca_inv() == p.word("acA")
    with pytest.raises(ValueError):
        en_word(1, 1)
    with pytest.raises(ValueError):
        en_word(2, 0)


@pytest.mark.parametrize("t,n", [(2, 1), (2, 3), (3, 2), (4, 1)])
def test_expected_sgamma_shape(t, n):
    a = expected_sgamma_en(t, n)
    assert a.vertex_count == t * n + 3
    assert len(a.loops(2)) == n + 2
    assert a.count_edges(0) == 2 and a.count_edges(1) == t * n
    assert a.initial == a.terminal == 0


@pytest.mark.parametrize("t,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)])
def test_closure_matches_expected_sgamma(t, n):
    c = closure(build_presentation(FamilySpec.st(t)), en_word(t, n))
    assert c.exact and isomorphic(c.automaton, expected_sgamma_en(t, n))


def test_ti_idempotent_form_presents_same_monoid():
    f = FamilySpec.ti(1, 2)
    p, q = build_presentation(f), ti_idempotent_form(f)
    for i in f.indices:
        for pres in (p, q):
            assert eq(pres, ab_i_a(i), ab_i_a(i) + p.word("c")) is Verdict.YES
            assert eq(pres, w_e(i), w_e(i) + p.word("c")) is Verdict.YES


@pytest.mark.parametrize("spec", ["St2", "St3", "TI1,2,3", "TI2"])
def test_replicate_passes(spec):
    r = replicate(FamilySpec.parse(spec), depth=2, mu_len=6)
    assert r.passed, r.table()
    assert r.checks == sorted(r.checks, key=lambda c: c.name)


def test_replicate_report_formats():
    r = replicate(FamilySpec.st(2), depth=1, mu_len=0)
    data = json.loads(r.to_json())
    assert data["family"] == "St2" and data["passed"] is True
    assert {c["name"] for c in data["checks"]} >= {"e1.schutzenberger_graph", "a_edge_bound"}
    assert r.table().splitlines()[0] == "family St2"
    assert r.table().endswith("all checks passed")
