"""Structural probes on Schützenberger automata and bounded idempotent searches."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .graphs import FoldedAutomaton, accepts, canonical_form, read
from .stephen import (DEFAULT_BUDGET, Budget, Presentation, Verdict, closure, eq,
                      is_idempotent, leq, run_closure)
from .words import Word, format_word


def letter_weight(w: Sequence[int], x: int) -> int:
    """Occurrences of generator ``x`` minus occurrences of its inverse."""
    pos, neg = 2 * x, 2 * x + 1
    return sum(1 if y == pos else -1 if y == neg else 0 for y in w)


@dataclass
class WeightReport:
    letter: str
    loops_checked: int
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _spanning_tree(a: FoldedAutomaton) -> tuple[dict[int, Word], set[tuple[int, int, int]]]:
    """BFS tree from the initial vertex: path words to each vertex, tree edges."""
    words = {a.initial: Word()}
    tree_edges = set()
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        for x in sorted(a.delta[p]):
            q = a.delta[p][x]
            if q not in words:
                words[q] = words[p] + (x,)
                tree_edges.add((p, x >> 1, q) if not x & 1 else (q, x >> 1, p))
                queue.append(q)
    return words, tree_edges


def fundamental_cycles(a: FoldedAutomaton) -> list[Word]:
    """One loop at the initial vertex per edge outside a BFS spanning tree."""
    words, tree_edges = _spanning_tree(a)
    return [words[p] + (2 * x,) + words[q].inverse()
            for p, x, q in a.edges if (p, x, q) not in tree_edges]


def check_loop_weights(a: FoldedAutomaton, x: int, sample: int | None = None,
                       alphabet: Sequence[str] | None = None) -> WeightReport:
    # weights add along paths, so zero on every chord cycle means zero on every loop
    cycles = fundamental_cycles(a)
    if sample is not None:
        cycles = cycles[:sample]
    name = alphabet[x] if alphabet else chr(ord("a") + x)
    report = WeightReport(name, len(cycles))
    for loop in cycles:
        if letter_weight(loop, x):
            report.violations.append((a.initial, format_word(loop, alphabet)))
    return report


def find_labeled_path(a: FoldedAutomaton, w: Sequence[int]) -> tuple[int, int] | None:
    for p in range(a.vertex_count):
        q = read(a, p, w)
        if q is not None:
            return p, q
    return None


def labeled_loops(a: FoldedAutomaton, w: Sequence[int]) -> list[int]:
    """Vertices at which ``w`` reads a closed path."""
    return [p for p in range(a.vertex_count) if read(a, p, w) == p]


# Dyck word enumeration ------------------------------------------------------

def _children(v: tuple[int, ...], ncodes: int) -> list[tuple[int, ...]]:
    last = v[-1] ^ 1 if v else -1
    return [v + (x,) for x in range(ncodes) if x != last]


def _tree_word(vertices: frozenset, ncodes: int) -> Word:
    out: list[int] = []

    def walk(v):
        for child in _children(v, ncodes):
            if child in vertices:
                out.append(child[-1])
                walk(child)
                out.append(child[-1] ^ 1)

    walk(())
    return Word(out)


def dyck_trees(alphabet_size: int, max_len: int) -> Iterator[Word]:
    """One Dyck word per Munn tree with at most ``max_len // 2`` edges.

    The word is the depth-first traversal of the tree, so it has the minimum
    length ``2 * edges`` among the Dyck words with that tree.
    """
    ncodes = 2 * alphabet_size
    limit = max_len // 2

    def grow(vertices, frontier, size):
        yield _tree_word(vertices, ncodes)
        if size == limit:
            return
        for i, v in enumerate(frontier):
            yield from grow(vertices | {v}, frontier[i + 1:] + _children(v, ncodes), size + 1)

    yield from grow(frozenset([()]), _children((), ncodes), 0)


def dyck_paths(alphabet_size: int, max_len: int) -> Iterator[Word]:
    """The words ``u u^-1`` for reduced ``u`` with ``|u| <= max_len // 2``."""
    ncodes = 2 * alphabet_size
    limit = max_len // 2
    stack = [()]
    while stack:
        u = stack.pop()
        w = Word(u)
        yield w + w.inverse()
        if len(u) < limit:
            stack.extend(reversed(_children(u, ncodes)))


# mu-searches ------------------------------------------------------------------

@dataclass
class MuSearchReport:
    target: str
    candidates_confirmed: list[str] = field(default_factory=list)
    strict_between_found: list[tuple[str, str]] = field(default_factory=list)
    words_enumerated: int = 0
    max_len: int = 0
    unknown: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _check_candidate(p: Presentation, s: Word, e: Word, budget: Budget) -> None:
    if is_idempotent(p, e, budget) is not Verdict.YES:
        raise ValueError(f"{format_word(e, p.alphabet)} is not known to be idempotent")
    if leq(p, e, s, budget) is not Verdict.YES:
        raise ValueError(f"{format_word(e, p.alphabet)} is not known to lie below "
                         f"{format_word(s, p.alphabet)}")


def mu_falsifier_search(p: Presentation, s: Sequence[int], e: Sequence[int], max_len: int,
                        budget: Budget = DEFAULT_BUDGET) -> MuSearchReport:
    """Look for idempotents strictly between ``e`` and ``s``.

    Every Munn tree with at most ``max_len // 2`` edges is tried.  An empty
    ``strict_between_found`` is evidence of maximality up to that bound only.
    """
    s, e = Word(s), Word(e)
    _check_candidate(p, s, e, budget)
    abc = p.alphabet
    report = MuSearchReport(format_word(s, abc), [format_word(e, abc)], max_len=max_len)
    above_e = closure(p, e, budget)
    for f in dyck_trees(len(abc), max_len):
        report.words_enumerated += 1
        # e <= f iff f is read root to root in A(e): cheap, rules out most words
        if above_e.exact and not accepts(above_e.automaton, f):
            continue
        if not above_e.exact and leq(p, e, f, budget) is Verdict.NO:
            continue
        below_s = leq(p, f, s, budget)
        if below_s is Verdict.NO:
            continue
        same = eq(p, e, f, budget)
        if Verdict.UNKNOWN in (below_s, same):
            report.unknown += 1
        elif same is Verdict.NO:
            report.strict_between_found.append((format_word(e, abc), format_word(f, abc)))
    return report


def confirm_mu_candidates(p: Presentation, s: Sequence[int], candidates: Sequence[Sequence[int]],
                          max_len: int = 0, budget: Budget = DEFAULT_BUDGET) -> MuSearchReport:
    """Confirm each candidate is an idempotent below ``s``; optionally falsifier-search it."""
    s = Word(s)
    abc = p.alphabet
    report = MuSearchReport(format_word(s, abc), max_len=max_len)
    for e in candidates:
        e = Word(e)
        _check_candidate(p, s, e, budget)
        report.candidates_confirmed.append(format_word(e, abc))
        if max_len:
            sub = mu_falsifier_search(p, s, e, max_len, budget)
            report.strict_between_found.extend(sub.strict_between_found)
            report.words_enumerated += sub.words_enumerated
            report.unknown += sub.unknown
    return report


def pairwise_incomparable(p: Presentation, words: Sequence[Sequence[int]],
                          budget: Budget = DEFAULT_BUDGET) -> list[tuple[int, int, Verdict]]:
    """Pairs ``(i, j, verdict)`` where ``leq(words[i], words[j])`` is not No."""
    bad = []
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            if i != j:
                got = leq(p, u, v, budget)
                if got is not Verdict.NO:
                    bad.append((i, j, got))
    return bad


def kill_letter(p: Presentation, x: int) -> tuple[Presentation, list[int | None]] | None:
    """The quotient by ``x = 1``: its presentation and the letter-code map.

    Deleting ``x`` from every relation presents the quotient of ``p`` by the
    extra relation ``x = 1``, so ``u <= v`` in ``p`` implies the same for the
    images.  Returns None for a one-letter alphabet.
    """
    if len(p.alphabet) < 2:
        return None
    codes: list[int | None] = []
    for y in range(2 * len(p.alphabet)):
        base = y >> 1
        codes.append(None if base == x else 2 * (base - (base > x)) + (y & 1))

    def image(w):
        return Word(codes[y] for y in w if codes[y] is not None)

    rels = []
    for r, s in p.relations:
        r2, s2 = image(r), image(s)
        if r2 != s2:
            rels.append((r2, s2))
    alphabet = p.alphabet[:x] + p.alphabet[x + 1:]
    return Presentation(alphabet, tuple(rels)), codes


class _QuotientFilter:
    """Rejects ``f`` when its image is provably not below the image of ``s``."""

    def __init__(self, p: Presentation, s: Word, budget: Budget):
        self.parts = []
        for x in range(len(p.alphabet)):
            got = kill_letter(p, x)
            if got is not None:
                q, codes = got
                s_img = Word(codes[y] for y in s if codes[y] is not None)
                self.parts.append((q, codes, s_img, {}))
        self.budget = budget

    def rejects(self, f: Sequence[int]) -> bool:
        for q, codes, s_img, memo in self.parts:
            f_img = Word([z for z in map(codes.__getitem__, f) if z is not None])
            got = memo.get(f_img)
            if got is None:
                # image closures are cheap but many; keep them out of the shared cache
                got = memo[f_img] = _leq_uncached(q, f_img, s_img, self.budget)
            if got is Verdict.NO:
                return True
        return False


def _leq_uncached(q, u, v, budget) -> Verdict:
    c = run_closure(q, u, budget)
    if accepts(c.automaton, v):
        return Verdict.YES
    return Verdict.NO if c.exact else Verdict.UNKNOWN


@dataclass
class _Found:
    word: Word
    length: int
    automaton: FoldedAutomaton


def idempotents_below(p: Presentation, s: Sequence[int], max_len: int, shape: str = "path",
                      budget: Budget = DEFAULT_BUDGET) -> tuple[list[_Found], int]:
    """Distinct idempotents ``f <= s`` among enumerated Dyck words.

    Returns one entry per element (shortest word first) and the number of
    words whose verdict stayed Unknown.  With ``shape="path"`` an extension
    ``u x`` of a word ``u`` already below ``s`` is skipped: it gives an
    element below ``u u^-1`` and so can never be a new maximal one.
    """
    s = Word(s)
    size = len(p.alphabet)
    found: dict[FoldedAutomaton, _Found] = {}
    unknown = 0

    quotients = _QuotientFilter(p, s, budget)

    def visit(f: Word) -> bool:
        nonlocal unknown
        if quotients.rejects(f):
            return False
        got = leq(p, f, s, budget)
        if got is Verdict.UNKNOWN:
            unknown += 1
        if got is not Verdict.YES:
            return False
        c = closure(p, f, budget)
        if not c.exact:
            unknown += 1
            return True
        key = canonical_form(c.automaton)
        seen = found.get(key)
        if seen is None or (len(f), f) < (seen.length, seen.word):
            found[key] = _Found(f, len(f), c.automaton)
        return True

    if shape == "tree":
        for f in dyck_trees(size, max_len):
            visit(f)
    elif shape == "path":
        ncodes = 2 * size
        stack = [()]
        while stack:
            u = stack.pop()
            w = Word(u)
            if visit(w + w.inverse()):
                continue
            if 2 * (len(u) + 1) <= max_len:
                stack.extend(reversed(_children(u, ncodes)))
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return sorted(found.values(), key=lambda x: (x.length, x.word)), unknown


def maximal_among(items: Sequence[_Found]) -> list[_Found]:
    """Items with no other item strictly above them."""
    keep = []
    for i, f in enumerate(items):
        # f <= g iff g is read root to root in A(f); distinct items are distinct elements
        if not any(j != i and accepts(f.automaton, g.word) for j, g in enumerate(items)):
            keep.append(f)
    return keep


def mu_candidate_growth(p: Presentation, s: Sequence[int], lens: Sequence[int],
                        budget: Budget = DEFAULT_BUDGET, shape: str = "path") -> list[int]:
    """For each bound, how many found idempotents below ``s`` have no found strict upper bound."""
    if not lens:
        return []
    found, _ = idempotents_below(p, s, max(lens), shape, budget)
    counts = []
    for bound in lens:
        counts.append(len(maximal_among([f for f in found if f.length <= bound])))
    return counts


def maximal_words(p: Presentation, s: Sequence[int], max_len: int, shape: str = "path",
                  budget: Budget = DEFAULT_BUDGET) -> list[str]:
    found, _ = idempotents_below(p, s, max_len, shape, budget)
    return [format_word(f.word, p.alphabet) for f in maximal_among(found)]
