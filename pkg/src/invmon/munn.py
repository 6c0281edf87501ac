"""The free inverse monoid: Munn trees and its word problem."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import FoldedAutomaton, accepts, canonical_form, fold_complete, isomorphic, linear_automaton
from .words import Word, parse_word, validate_alphabet

#: evaluate both characterisations of equality and insist they agree
CROSS_CHECK = __debug__


@dataclass(frozen=True)
class FreeContext:
    alphabet: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", validate_alphabet(self.alphabet))

    @classmethod
    def of(cls, names: str | Sequence[str]) -> "FreeContext":
        return cls(tuple(names))

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def check(self, w: Sequence[int]) -> None:
        if w and max(x >> 1 for x in w) >= len(self.alphabet):
            raise ValueError(f"word uses a letter outside alphabet {list(self.alphabet)}")


def munn_tree(ctx: FreeContext, w: Sequence[int]) -> FoldedAutomaton:
    ctx.check(w)
    return fold_complete(linear_automaton(w))


def is_dyck(w: Sequence[int]) -> bool:
    return not Word(w).reduced()


def fim_equal(ctx: FreeContext, u: Sequence[int], v: Sequence[int]) -> bool:
    tu, tv = munn_tree(ctx, u), munn_tree(ctx, v)
    same = isomorphic(tu, tv)
    if CROSS_CHECK:
        mutual = accepts(tu, v) and accepts(tv, u)
        if mutual != same:
            raise AssertionError(f"word problem characterisations disagree on {u!r}, {v!r}")
    return same


def fim_leq(ctx: FreeContext, u: Sequence[int], v: Sequence[int]) -> bool:
    """Natural order ``u <= v``: ``v`` is read from root to root of MT(u)."""
    return accepts(munn_tree(ctx, u), v)


def fim_is_idempotent(ctx: FreeContext, w: Sequence[int]) -> bool:
    ctx.check(w)
    result = is_dyck(w)
    if CROSS_CHECK and result != fim_equal(ctx, Word(w) + Word(w), w):
        raise AssertionError(f"idempotency characterisations disagree on {w!r}")
    return result


def fim_key(ctx: FreeContext, w: Sequence[int]) -> FoldedAutomaton:
    """Canonical Munn tree, a complete invariant of the element ``w``."""
    return canonical_form(munn_tree(ctx, w))
