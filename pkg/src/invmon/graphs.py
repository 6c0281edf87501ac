"""Involutive labelled graphs and confluent folding.

Only positive-letter edges are stored; an edge ``(p, a, q)`` is also
traversable as ``(q, a^-1, p)``.  Folding identifies the ends of two equally
labelled edges leaving one vertex; :func:`fold_complete` runs it to
completion with a union-find over vertices.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .words import Letter, Word


@dataclass(frozen=True)
class EdgeGraph:
    """Birooted involutive graph, possibly nondeterministic.

    ``edges`` holds triples ``(p, base, q)`` for positive letters only.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    initial: int = 0
    terminal: int = 0

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        for v in (self.initial, self.terminal):
            if not 0 <= v < n:
                raise ValueError(f"root {v} out of range for {n} vertices")
        for p, a, q in self.edges:
            if not (0 <= p < n and 0 <= q < n) or a < 0:
                raise ValueError(f"bad edge {(p, a, q)} for {n} vertices")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))


@dataclass(frozen=True, eq=False)
class FoldedAutomaton:
    """Deterministic, involutive, trim birooted automaton.

    Vertices are ``0 .. vertex_count - 1``.  Equality is structural on the
    vertex numbering, so compare :func:`canonical_form` results to test
    isomorphism through ``==``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    initial: int = 0
    terminal: int = 0
    delta: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("an automaton needs at least one vertex")
        for v in (self.initial, self.terminal):
            if not 0 <= v < n:
                raise ValueError(f"root {v} out of range for {n} vertices")
        edges = tuple(sorted(set(tuple(e) for e in self.edges)))
        delta: list[dict[int, int]] = [{} for _ in range(n)]
        for p, a, q in edges:
            if not (0 <= p < n and 0 <= q < n) or a < 0:
                raise ValueError(f"bad edge {(p, a, q)} for {n} vertices")
            x = 2 * a
            if delta[p].setdefault(x, q) != q or delta[q].setdefault(x ^ 1, p) != p:
                raise ValueError(f"edge {(p, a, q)} breaks determinism")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "delta", tuple(delta))
        if len(_reachable(self.delta, self.initial)) != n:
            raise ValueError("automaton is not trim: some vertex is unreachable")

    def __eq__(self, other):
        if not isinstance(other, FoldedAutomaton):
            return NotImplemented
        return (self.vertex_count, self.initial, self.terminal, self.edges) == (
            other.vertex_count, other.initial, other.terminal, other.edges)

    def __hash__(self):
        return hash((self.vertex_count, self.initial, self.terminal, self.edges))

    def step(self, p: int, x: int) -> int | None:
        return self.delta[p].get(x)

    @cached_property
    def alphabet_size(self) -> int:
        return max((a for _, a, _ in self.edges), default=-1) + 1

    def loops(self, base: int) -> list[int]:
        """Vertices carrying a loop labelled by generator ``base``."""
        return sorted(p for p, a, q in self.edges if a == base and p == q)

    def count_edges(self, base: int) -> int:
        return sum(1 for _, a, _ in self.edges if a == base)

    def with_roots(self, initial: int, terminal: int) -> "FoldedAutomaton":
        return FoldedAutomaton(self.vertex_count, self.edges, initial, terminal)

    def as_edge_graph(self) -> EdgeGraph:
        return EdgeGraph(self.vertex_count, self.edges, self.initial, self.terminal)


def _reachable(delta: Sequence[dict], start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        p = todo.pop()
        for q in delta[p].values():
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def linear_automaton(w: Sequence[int]) -> EdgeGraph:
    """Path graph q0 -> ... -> q_n spelling ``w``; initial q0, terminal q_n."""
    edges = []
    for i, x in enumerate(w):
        if x & 1:
            edges.append((i + 1, x >> 1, i))
        else:
            edges.append((i, x >> 1, i + 1))
    return EdgeGraph(len(w) + 1, tuple(edges), 0, len(w))


class Folder:
    """Mutable union-find workspace for gluing paths and folding.

    Each class representative keeps one outgoing target per letter code;
    a second edge with the same label queues a merge of the two targets.
    """

    def __init__(self, vertex_count: int = 0):
        self.parent = list(range(vertex_count))
        self.out: list[dict[int, int]] = [{} for _ in range(vertex_count)]
        self.pending: list[tuple[int, int]] = []

    def add_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _attach(self, p: int, x: int, q: int) -> None:
        old = self.out[p].setdefault(x, q)
        if old != q:
            self.pending.append((old, q))

    def add_edge(self, p: int, x: int, q: int) -> None:
        p, q = self.find(p), self.find(q)
        self._attach(p, x, q)
        self._attach(q, x ^ 1, p)

    def add_path(self, p: int, w: Sequence[int], q: int) -> None:
        """Glue a fresh path labelled ``w`` from ``p`` to ``q``.

        Interior vertices are new; an empty ``w`` identifies ``p`` and ``q``.
        """
        if not w:
            self.pending.append((p, q))
            return
        cur = p
        for x in w[:-1]:
            nxt = self.add_vertex()
            self.add_edge(cur, x, nxt)
            cur = nxt
        self.add_edge(cur, w[-1], q)

    def merge(self, p: int, q: int) -> None:
        self.pending.append((p, q))

    def fold(self, rng: random.Random | None = None) -> None:
        pending = self.pending
        out = self.out
        while pending:
            if rng is not None:
                i = rng.randrange(len(pending))
                pending[i], pending[-1] = pending[-1], pending[i]
            u, v = pending.pop()
            u, v = self.find(u), self.find(v)
            if u == v:
                continue
            # keep the smaller index as representative; only fixes determinism
            # of the union order, renumbering does not depend on it
            if v < u:
                u, v = v, u
            self.parent[v] = u
            moved, out[v] = out[v], {}
            target = out[u]
            for x, w in moved.items():
                old = target.setdefault(x, w)
                if old != w:
                    pending.append((old, w))

    def result(self, initial: int, terminal: int) -> FoldedAutomaton:
        """Fold, then renumber classes densely by smallest original index."""
        self.fold()
        number: dict[int, int] = {}
        for v in range(len(self.parent)):
            r = self.find(v)
            if r not in number:
                number[r] = len(number)
        edges = set()
        for r, k in number.items():
            for x, w in self.out[r].items():
                if not x & 1:
                    edges.add((k, x >> 1, number[self.find(w)]))
        return FoldedAutomaton(len(number), tuple(edges),
                               number[self.find(initial)], number[self.find(terminal)])


def fold_complete(g: EdgeGraph, rng: random.Random | None = None) -> FoldedAutomaton:
    """Completely fold ``g``.

    ``rng`` randomises edge insertion and merge order; the result does not
    depend on it up to isomorphism (and with the dense renumbering, not at all).
    """
    f = Folder(g.vertex_count)
    edges = list(g.edges)
    if rng is not None:
        rng.shuffle(edges)
    for p, a, q in edges:
        f.add_edge(p, 2 * a, q)
    f.fold(rng)
    return f.result(g.initial, g.terminal)


def fold_clashes(g: EdgeGraph) -> list[tuple[int, int]]:
    """Pairs of distinct vertices that a single fold step would identify."""
    seen: dict[tuple[int, int], set[int]] = {}
    for p, a, q in g.edges:
        seen.setdefault((p, 2 * a), set()).add(q)
        seen.setdefault((q, 2 * a + 1), set()).add(p)
    clashes = set()
    for targets in seen.values():
        ts = sorted(targets)
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                clashes.add((ts[i], ts[j]))
    return sorted(clashes)


def fold_once(g: EdgeGraph, pair: tuple[int, int]) -> EdgeGraph:
    """Identify the two vertices of ``pair`` (one elementary fold).

    Vertex ``max(pair)`` disappears and higher indices shift down by one.
    Parallel duplicate edges collapse.
    """
    keep, gone = sorted(pair)

    def rename(v: int) -> int:
        if v == gone:
            v = keep
        return v - 1 if v > gone else v

    edges = sorted({(rename(p), a, rename(q)) for p, a, q in g.edges})
    return EdgeGraph(g.vertex_count - 1, tuple(edges), rename(g.initial), rename(g.terminal))


def is_deterministic(g: EdgeGraph) -> bool:
    return not fold_clashes(g)


def prune(g: EdgeGraph) -> EdgeGraph:
    """Drop vertices not connected to the initial vertex."""
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for p, _, q in g.edges:
        adj[p].append(q)
        adj[q].append(p)
    seen = {g.initial}
    todo = [g.initial]
    while todo:
        for q in adj[todo.pop()]:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    if g.terminal not in seen:
        raise ValueError("terminal vertex is not connected to the initial vertex")
    number = {v: i for i, v in enumerate(sorted(seen))}
    edges = tuple((number[p], a, number[q]) for p, a, q in g.edges if p in seen)
    return EdgeGraph(len(number), edges, number[g.initial], number[g.terminal])


def to_automaton(g: EdgeGraph) -> FoldedAutomaton:
    """Reinterpret an already deterministic graph; raises if it is not."""
    return FoldedAutomaton(g.vertex_count, g.edges, g.initial, g.terminal)


def read(a: FoldedAutomaton, start: int, w: Iterable[int]) -> int | None:
    """End vertex of the path labelled ``w`` from ``start``, or None."""
    delta = a.delta
    p = start
    for x in w:
        p = delta[p].get(x)
        if p is None:
            return None
    return p


def accepts(a: FoldedAutomaton, w: Iterable[int]) -> bool:
    return read(a, a.initial, w) == a.terminal


def isomorphic(a: FoldedAutomaton, b: FoldedAutomaton) -> bool:
    """Root-preserving label-preserving isomorphism by parallel traversal."""
    if (a.vertex_count, len(a.edges)) != (b.vertex_count, len(b.edges)):
        return False
    match = {a.initial: b.initial}
    used = {b.initial}
    todo = [a.initial]
    while todo:
        p = todo.pop()
        q = match[p]
        da, db = a.delta[p], b.delta[q]
        if da.keys() != db.keys():
            return False
        for x, p2 in da.items():
            q2 = db[x]
            seen = match.get(p2)
            if seen is None:
                if q2 in used:
                    return False
                match[p2] = q2
                used.add(q2)
                todo.append(p2)
            elif seen != q2:
                return False
    return match.get(a.terminal) == b.terminal


def canonical_form(a: FoldedAutomaton) -> FoldedAutomaton:
    """Relabel vertices in BFS order from the initial vertex.

    Letters are visited positive ones first in ascending base order, then
    the inverses in ascending base order.
    """
    size = a.alphabet_size
    order = [2 * i for i in range(size)] + [2 * i + 1 for i in range(size)]
    number = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        d = a.delta[p]
        for x in order:
            q = d.get(x)
            if q is not None and q not in number:
                number[q] = len(number)
                queue.append(q)
    edges = tuple((number[p], x, number[q]) for p, x, q in a.edges)
    return FoldedAutomaton(a.vertex_count, edges, 0, number[a.terminal])


def relabel(a: FoldedAutomaton, perm: Sequence[int]) -> FoldedAutomaton:
    """Apply the vertex permutation ``v -> perm[v]``."""
    edges = tuple((perm[p], x, perm[q]) for p, x, q in a.edges)
    return FoldedAutomaton(a.vertex_count, edges, perm[a.initial], perm[a.terminal])


def path_word(a: FoldedAutomaton, start: int, goal: int) -> Word | None:
    """Shortest word labelling a path ``start -> goal`` (BFS, letter order)."""
    prev: dict[int, tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        if p == goal:
            break
        for x in sorted(a.delta[p]):
            q = a.delta[p][x]
            if q not in prev:
                prev[q] = (p, x)
                queue.append(q)
    if goal not in prev:
        return None
    letters = []
    v = goal
    while prev[v] is not None:
        v, x = prev[v]
        letters.append(x)
    return Word(reversed(letters))


# serialization -------------------------------------------------------------

def to_json_dict(a: FoldedAutomaton | EdgeGraph, alphabet: Sequence[str]) -> dict:
    return {
        "alphabet": list(alphabet),
        "vertices": a.vertex_count,
        "initial": a.initial,
        "terminal": a.terminal,
        "edges": [[p, alphabet[x], q] for p, x, q in sorted(a.edges)],
    }


def to_json(a: FoldedAutomaton | EdgeGraph, alphabet: Sequence[str]) -> str:
    return json.dumps(to_json_dict(a, alphabet), sort_keys=True)


def edge_graph_from_json(data: str | dict) -> tuple[tuple[str, ...], EdgeGraph]:
    if isinstance(data, str):
        data = json.loads(data)
    alphabet = tuple(data["alphabet"])
    index = {name: i for i, name in enumerate(alphabet)}
    edges = []
    for p, name, q in data["edges"]:
        if name not in index:
            raise ValueError(f"edge label {name!r} not in alphabet")
        edges.append((int(p), index[name], int(q)))
    g = EdgeGraph(int(data["vertices"]), tuple(edges), int(data["initial"]), int(data["terminal"]))
    return alphabet, g


def from_json(data: str | dict) -> tuple[tuple[str, ...], FoldedAutomaton]:
    """Parse the JSON automaton schema; the graph must be deterministic and trim."""
    alphabet, g = edge_graph_from_json(data)
    return alphabet, to_automaton(g)


def to_dot(a: FoldedAutomaton | EdgeGraph, alphabet: Sequence[str], name: str = "automaton") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for v in range(a.vertex_count):
        shape = "doublecircle" if v == a.terminal else "circle"
        lines.append(f'  {v} [shape={shape}, label="{v}"];')
    lines.append(f"  __start -> {a.initial};")
    for p, x, q in sorted(a.edges):
        lines.append(f'  {p} -> {q} [label="{alphabet[x]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
