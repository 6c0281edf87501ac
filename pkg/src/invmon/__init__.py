"""Computations with finitely presented inverse monoids.

Munn trees, Stephen's procedure for Schützenberger automata, and the word
problem, natural order and idempotency tests built on them.
"""

from .graphs import (EdgeGraph, FoldedAutomaton, accepts, canonical_form, fold_complete,
                     isomorphic, linear_automaton, read)
from .munn import FreeContext, fim_equal, fim_is_idempotent, fim_leq, is_dyck, munn_tree
from .stephen import (Budget, ClosureResult, Presentation, Status, Verdict, closure, eq,
                      expansions_applicable, is_idempotent, leq, parse_presentation, r_class_size,
                      stephen_step)
from .words import Letter, Word, format_word, parse_word

__version__ = "0.1.0"
