"""Inverse monoid presentations and Stephen's procedure.

Starting from the Munn tree of ``w``, each round finds every place where one
side of a relation labels a path whose other side is missing, glues all the
missing sides at once and folds.  A round with nothing to glue means the
automaton is the Schützenberger automaton of ``w``.
"""

from __future__ import annotations

import enum
import random
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graphs import Folder, FoldedAutomaton, accepts, fold_complete, linear_automaton, read
from .words import Word, format_word, parse_word, validate_alphabet

# site directions
GLUE_S = 0  # left side r labels a path, right side s is missing
GLUE_R = 1  # right side s labels a path, left side r is missing


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()

    def __post_init__(self):
        alphabet = validate_alphabet(self.alphabet)
        rels = tuple((Word(r), Word(s)) for r, s in self.relations)
        for r, s in rels:
            if max(r.max_base(), s.max_base()) >= len(alphabet):
                raise ValueError("relation uses a letter outside the alphabet")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relations", rels)

    @classmethod
    def free(cls, alphabet: str | Sequence[str]) -> "Presentation":
        return cls(tuple(alphabet))

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def check(self, w: Sequence[int]) -> None:
        if w and max(x >> 1 for x in w) >= len(self.alphabet):
            raise ValueError(f"word uses a letter outside alphabet {list(self.alphabet)}")

    def to_text(self) -> str:
        lines = ["letters: " + " ".join(self.alphabet)]
        for r, s in self.relations:
            lines.append(f"rel: {_spaced(r, self.alphabet)} = {_spaced(s, self.alphabet)}")
        return "\n".join(lines) + "\n"


def _spaced(w: Word, alphabet) -> str:
    return " ".join(format_word(w, alphabet)) if w else "1"


def parse_presentation(text: str) -> Presentation:
    """Read the ``letters:`` / ``rel:`` text format; ``#`` starts a comment."""
    alphabet = None
    raw_rels = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ValueError(f"line {lineno}: expected 'letters:' or 'rel:'")
        if key == "letters":
            if alphabet is not None:
                raise ValueError(f"line {lineno}: duplicate 'letters:' line")
            alphabet = rest.split()
        elif key == "rel":
            lhs, eq, rhs = rest.partition("=")
            if not eq or "=" in rhs:
                raise ValueError(f"line {lineno}: a relation needs exactly one '='")
            raw_rels.append((lineno, lhs, rhs))
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None:
        raise ValueError("missing 'letters:' line")
    alphabet = validate_alphabet(alphabet)
    rels = []
    for lineno, lhs, rhs in raw_rels:
        try:
            rels.append((parse_word(lhs, alphabet), parse_word(rhs, alphabet)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return Presentation(alphabet, tuple(rels))


@dataclass(frozen=True)
class Budget:
    max_rounds: int = 64
    max_vertices: int = 100_000

    def __post_init__(self):
        if self.max_rounds < 1 or self.max_vertices < 1:
            raise ValueError("budget limits must be at least 1")


DEFAULT_BUDGET = Budget()


class Status(enum.Enum):
    EXACT = "Exact"
    TRUNCATED = "Truncated"


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ClosureResult:
    automaton: FoldedAutomaton
    status: Status
    rounds_used: int

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT


def expansions_applicable(p: Presentation, a: FoldedAutomaton) -> list[tuple[int, int, int, int]]:
    """All expansion sites ``(relation, direction, start, end)`` in sorted order."""
    sites = []
    for i, (r, s) in enumerate(p.relations):
        found_r = []
        found_s = []
        for v in range(a.vertex_count):
            qr = read(a, v, r)
            qs = read(a, v, s)
            if qr is not None and qr != qs:
                found_r.append((i, GLUE_S, v, qr))
            if qs is not None and qs != qr:
                found_s.append((i, GLUE_R, v, qs))
        sites.extend(found_r)
        sites.extend(found_s)
    return sites


def stephen_step(p: Presentation, a: FoldedAutomaton, rng: random.Random | None = None) -> FoldedAutomaton:
    """Glue the missing side at every current site at once, then fold."""
    sites = expansions_applicable(p, a)
    if not sites:
        return a
    return _glue_and_fold(p, a, sites, rng)


def _glue_and_fold(p, a, sites, rng=None) -> FoldedAutomaton:
    f = Folder(a.vertex_count)
    for u, x, v in a.edges:
        f.add_edge(u, 2 * x, v)
    if rng is not None:
        sites = list(sites)
        rng.shuffle(sites)
    for i, direction, start, end in sites:
        r, s = p.relations[i]
        f.add_path(start, s if direction == GLUE_S else r, end)
    f.fold(rng)
    return f.result(a.initial, a.terminal)


def run_closure(p: Presentation, w: Word, budget: Budget = DEFAULT_BUDGET) -> ClosureResult:
    """Uncached body of :func:`closure`; ``w`` must already be checked."""
    a = fold_complete(linear_automaton(w))
    rounds = 1
    while True:
        sites = expansions_applicable(p, a)
        if not sites:
            return ClosureResult(a, Status.EXACT, rounds)
        if rounds >= budget.max_rounds:
            return ClosureResult(a, Status.TRUNCATED, rounds)
        a = _glue_and_fold(p, a, sites)
        rounds += 1
        if a.vertex_count > budget.max_vertices:
            return ClosureResult(a, Status.TRUNCATED, rounds)


_closure = lru_cache(maxsize=8192)(run_closure)


_recorders: list[list] = []


@contextmanager
def record_closures():
    """Collect ``(presentation, word, result)`` for every :func:`closure` call inside."""
    log: list[tuple[Presentation, Word, ClosureResult]] = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def closure(p: Presentation, w: Sequence[int], budget: Budget = DEFAULT_BUDGET) -> ClosureResult:
    """Run Stephen's sequence from MT(w) until it stabilises or the budget trips."""
    w = Word(w)
    p.check(w)
    result = _closure(p, w, budget)
    for log in _recorders:
        log.append((p, w, result))
    return result


def approximants(p: Presentation, w: Sequence[int], rounds: int) -> list[FoldedAutomaton]:
    """The first ``rounds`` terms of Stephen's sequence (stops early at a fixed point)."""
    a = fold_complete(linear_automaton(Word(w)))
    seq = [a]
    while len(seq) < rounds:
        nxt = stephen_step(p, a)
        if nxt is a:
            break
        seq.append(nxt)
        a = nxt
    return seq


def _membership(c: ClosureResult, w: Sequence[int]) -> Verdict:
    if accepts(c.automaton, w):
        return Verdict.YES
    return Verdict.NO if c.exact else Verdict.UNKNOWN


def leq(p: Presentation, u: Sequence[int], v: Sequence[int], budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Natural order ``u <= v``, decided as ``v`` in L(A(u))."""
    return _membership(closure(p, u, budget), v)


def eq(p: Presentation, u: Sequence[int], v: Sequence[int], budget: Budget = DEFAULT_BUDGET) -> Verdict:
    one = _membership(closure(p, u, budget), v)
    two = _membership(closure(p, v, budget), u)
    if one is Verdict.YES and two is Verdict.YES:
        return Verdict.YES
    if Verdict.NO in (one, two):
        return Verdict.NO
    return Verdict.UNKNOWN


def is_idempotent(p: Presentation, w: Sequence[int], budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Whether the closure of ``w`` has a basepoint (initial == terminal)."""
    c = closure(p, w, budget)
    if c.automaton.initial == c.automaton.terminal:
        return Verdict.YES
    return Verdict.NO if c.exact else Verdict.UNKNOWN


def r_class_size(p: Presentation, w: Sequence[int], budget: Budget = DEFAULT_BUDGET) -> int | None:
    """Size of the R-class of ``w``; None when the closure was truncated."""
    c = closure(p, w, budget)
    return c.automaton.vertex_count if c.exact else None

