"""The two presentation families and their replication checks.

``TI``: ``<a, b, c | a b^i a = a b^i a c  (i in I)>`` for a finite index set.
``St``: ``<a, b, c | c a = a, c b^-t c^-1 b^t = c b^-t b^t c^-1>`` for ``t >= 2``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable

from .analysis import (check_loop_weights, confirm_mu_candidates, find_labeled_path, labeled_loops,
                       mu_candidate_growth, mu_falsifier_search, pairwise_incomparable)
from .graphs import FoldedAutomaton, isomorphic
from .munn import FreeContext, munn_tree
from .stephen import DEFAULT_BUDGET, Budget, Presentation, Verdict, closure, eq, leq
from .words import Word, gen

ALPHABET = ("a", "b", "c")
A, B, C = 0, 1, 2


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    indices: tuple[int, ...] = ()
    t: int = 0

    def __post_init__(self):
        if self.kind == "TI":
            if not self.indices:
                raise ValueError("TI needs a nonempty index set")
            if len(set(self.indices)) != len(self.indices) or min(self.indices) < 1:
                raise ValueError("TI indices must be distinct positive integers")
            object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        elif self.kind == "St":
            if self.t < 2:
                raise ValueError("St needs t >= 2")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    @classmethod
    def ti(cls, *indices: int) -> "FamilySpec":
        return cls("TI", tuple(indices))

    @classmethod
    def st(cls, t: int) -> "FamilySpec":
        return cls("St", t=t)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """``"St2"``, ``"St:3"``, ``"TI1,2,3"`` or ``"TI:1,2,3"``."""
        text = text.replace(":", "").replace(" ", "")
        if text.startswith("St"):
            return cls.st(int(text[2:]))
        if text.startswith("TI"):
            return cls.ti(*(int(x) for x in text[2:].split(",") if x))
        raise ValueError(f"cannot parse family {text!r}")

    def __str__(self):
        if self.kind == "St":
            return f"St{self.t}"
        return "TI" + ",".join(map(str, self.indices))


def ab_i_a(i: int) -> Word:
    return gen(A) + gen(B, i) + gen(A)


def build_presentation(f: FamilySpec) -> Presentation:
    if f.kind == "TI":
        rels = tuple((ab_i_a(i), ab_i_a(i) + gen(C)) for i in f.indices)
    else:
        t = f.t
        lhs = gen(C) + gen(B, -t) + gen(C, -1) + gen(B, t)
        rhs = gen(C) + gen(B, -t) + gen(B, t) + gen(C, -1)
        rels = ((gen(C) + gen(A), gen(A)), (lhs, rhs))
    return Presentation(ALPHABET, rels)


def ti_idempotent_form(f: FamilySpec) -> Presentation:
    """TI with relations ``u^-1 u = u^-1 u c``; presents the same monoid."""
    rels = []
    for i in f.indices:
        u = ab_i_a(i)
        rels.append((u.inverse() + u, u.inverse() + u + gen(C)))
    return Presentation(ALPHABET, tuple(rels))


def en_word(t: int, n: int) -> Word:
    """The Dyck word ``(a b^{tn} a)(a b^{tn} a)^-1``."""
    if t < 2 or n < 1:
        raise ValueError("need t >= 2 and n >= 1")
    u = ab_i_a(t * n)
    return u + u.inverse()


def w_e(i: int) -> Word:
    """The idempotent word ``(a b^i a)^-1 (a b^i a)``."""
    u = ab_i_a(i)
    return u.inverse() + u


def aca_inv() -> Word:
    return gen(A) + gen(C) + gen(A, -1)


def expected_sgamma_en(t: int, n: int) -> FoldedAutomaton:
    """Spine p0 -a-> p1 -b^t-> ... -b^t-> p_{n+1} -a-> p_{n+2}, c-loops on p0..p_{n+1}.

    Vertices are numbered along the spine; the basepoint is p0.
    """
    if t < 2 or n < 1:
        raise ValueError("need t >= 2 and n >= 1")
    edges = [(0, A, 1)]
    v = 1
    marked = [0, 1]
    for _ in range(n):
        for _ in range(t):
            edges.append((v, B, v + 1))
            v += 1
        marked.append(v)
    edges.append((v, A, v + 1))
    edges.extend((p, C, p) for p in marked)
    return FoldedAutomaton(v + 2, tuple(edges), 0, 0)


# replication -------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ReplicationReport:
    family: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        data = asdict(self)
        data["passed"] = self.passed
        return json.dumps(data, sort_keys=True, indent=2)

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"family {self.family}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  {mark}  {c.name:<{width}}  {c.detail}")
        lines.append(f"  {'all checks passed' if self.passed else 'SOME CHECKS FAILED'}")
        return "\n".join(lines)


def _run(checks: list[tuple[str, Callable[[], tuple[bool, str]]]]) -> list[Check]:
    out = []
    for name, fn in sorted(checks, key=lambda c: c[0]):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"error: {exc!r}"
        out.append(Check(name, bool(ok), detail))
    return out


def _st_checks(f: FamilySpec, depth: int, mu_len: int, budget: Budget):
    t = f.t
    p = build_presentation(f)
    checks = []
    for n in range(1, depth + 1):
        def sgamma(n=n):
            c = closure(p, en_word(t, n), budget)
            a = c.automaton
            ok = (c.exact and isomorphic(a, expected_sgamma_en(t, n))
                  and a.vertex_count == t * n + 3 and len(a.loops(C)) == n + 2)
            return ok, (f"{c.status.value}, {a.vertex_count} vertices (want {t * n + 3}), "
                        f"{len(a.loops(C))} c-loops (want {n + 2})")

        def weights(n=n):
            c = closure(p, en_word(t, n), budget)
            r = check_loop_weights(c.automaton, B, alphabet=ALPHABET)
            return c.exact and r.ok, f"{r.loops_checked} cycles, {len(r.violations)} violations"

        def below(n=n):
            got = leq(p, en_word(t, n), aca_inv(), budget)
            return got is Verdict.YES, got.value

        checks += [(f"e{n}.schutzenberger_graph", sgamma),
                   (f"e{n}.b_loop_weight", weights),
                   (f"e{n}.below_aca", below)]

    def rel1():
        got = eq(p, gen(C) + gen(A), gen(A), budget)
        return got is Verdict.YES, got.value

    def rel2():
        got = eq(p, *p.relations[1], budget)
        return got is Verdict.YES, got.value

    def a_edges():
        ctx = FreeContext(ALPHABET)
        bad = []
        for n in range(1, depth + 1):
            w = en_word(t, n)
            c = closure(p, w, budget)
            if not c.exact or c.automaton.count_edges(A) > munn_tree(ctx, w).count_edges(A):
                bad.append(n)
        return not bad, f"violations at n={bad}" if bad else "bounded by Munn tree"

    checks += [("relation.ca_eq_a", rel1), ("relation.second_sides_equal", rel2),
               ("a_edge_bound", a_edges)]
    if mu_len:
        def falsifier():
            r = mu_falsifier_search(p, aca_inv(), en_word(t, 1), mu_len, budget)
            return not r.strict_between_found and not r.unknown, (
                f"{r.words_enumerated} trees up to length {mu_len}, "
                f"{len(r.strict_between_found)} strict intermediates")
        checks.append(("mu.e1_no_falsifier", falsifier))
    return checks


def _ti_checks(f: FamilySpec, mu_len: int, budget: Budget):
    p = build_presentation(f)
    ctx = FreeContext(ALPHABET)
    idx = f.indices
    checks = []
    for i in idx:
        def relation(i=i):
            got = eq(p, ab_i_a(i), ab_i_a(i) + gen(C), budget)
            return got is Verdict.YES, got.value

        def idem_form(i=i):
            got = eq(p, w_e(i), w_e(i) + gen(C), budget)
            return got is Verdict.YES, got.value

        def c_loop(i=i):
            c = closure(p, ab_i_a(i), budget)
            loops = labeled_loops(c.automaton, gen(C))
            return c.exact and c.automaton.terminal in loops, f"c-loops at {loops}"

        checks += [(f"i{i}.relation_holds", relation), (f"i{i}.w_e_c_eq_w_e", idem_form),
                   (f"i{i}.c_loop_at_terminal", c_loop)]
        for j in idx:
            if i != j:
                def no_path(i=i, j=j):
                    hit = find_labeled_path(munn_tree(ctx, ab_i_a(j)), ab_i_a(i))
                    return hit is None, f"path {hit}" if hit else "none"
                checks.append((f"i{i}.no_path_in_MT_j{j}", no_path))

    def confirmed():
        r = confirm_mu_candidates(p, gen(C), [w_e(i) for i in idx], mu_len, budget)
        return not r.strict_between_found and not r.unknown, (
            f"{len(r.candidates_confirmed)} confirmed below c, "
            f"{len(r.strict_between_found)} strict intermediates")

    def incomparable():
        bad = pairwise_incomparable(p, [w_e(i) for i in idx], budget)
        return not bad, f"comparable pairs {bad}" if bad else "pairwise incomparable"

    def distinct():
        bad = [(i, j) for i in idx for j in idx
               if i < j and eq(p, w_e(i), w_e(j), budget) is not Verdict.NO]
        return not bad, f"not separated {bad}" if bad else "pairwise distinct"

    def equivalent_forms():
        q = ti_idempotent_form(f)
        words = [ab_i_a(i) for i in idx] + [w_e(i) for i in idx] + [gen(C), aca_inv()]
        bad = []
        for u in words:
            cu, cq = closure(p, u, budget), closure(q, u, budget)
            if not (cu.exact and cq.exact and isomorphic(cu.automaton, cq.automaton)):
                bad.append(u)
        return not bad, f"{len(words)} closures compared"

    checks += [("mu.candidates_below_c", confirmed), ("mu.incomparable", incomparable),
               ("mu.distinct", distinct), ("presentation.u_inv_u_form_equivalent", equivalent_forms)]
    return checks


def replicate(f: FamilySpec, depth: int = 3, mu_len: int = 8,
              budget: Budget = DEFAULT_BUDGET) -> ReplicationReport:
    """Run every check for ``f``; failures are recorded, never raised."""
    if f.kind == "St":
        checks = _st_checks(f, depth, mu_len, budget)
    else:
        checks = _ti_checks(f, mu_len, budget)
    return ReplicationReport(str(f), _run(checks))


def growth(f: FamilySpec, lens=(7, 12, 17), budget: Budget = DEFAULT_BUDGET) -> list[int]:
    p = build_presentation(f)
    target = aca_inv() if f.kind == "St" else gen(C)
    return mu_candidate_growth(p, target, list(lens), budget)
