"""Thompson NFA, subset construction, minimization and the forward scanner.

All automata run over equivalence-class ids from a :class:`ClassMap`, never
over raw characters.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .regex import Alt, CharSet, ClassMap, Concat, Epsilon, Plus, RegexAst, Star

DEFAULT_STATE_CAP = 1 << 20


class StateCapExceeded(RuntimeError):
    """Subset construction produced more states than the configured cap."""


@dataclass
class Nfa:
    """Epsilon-NFA with a single start and a single accept state."""

    class_count: int
    start: int
    accept: int
    eps: list[list[int]] = field(default_factory=list)
    moves: list[list[tuple[frozenset[int], int]]] = field(default_factory=list)

    @property
    def state_count(self) -> int:
        return len(self.eps)

    def new_state(self) -> int:
        self.eps.append([])
        self.moves.append([])
        return len(self.eps) - 1

    def closure(self, states) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            for t in self.eps[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: frozenset[int], c: int) -> frozenset[int]:
        return self.closure(t for s in states for cs, t in self.moves[s] if c in cs)

    def accepts(self, classes: Sequence[int]) -> bool:
        """Simulate the NFA on a sequence of class ids."""
        cur = self.closure([self.start])
        for c in classes:
            cur = self.step(cur, c)
        return self.accept in cur


def build_nfa(ast: RegexAst, class_map: ClassMap) -> Nfa:
    nfa = Nfa(class_map.class_count, start=-1, accept=-1)

    def build(node: RegexAst) -> tuple[int, int]:
        s, f = nfa.new_state(), nfa.new_state()
        if isinstance(node, CharSet):
            nfa.moves[s].append((class_map.classes_in(node), f))
        elif isinstance(node, Epsilon):
            nfa.eps[s].append(f)
        elif isinstance(node, Concat):
            prev = s
            for item in node.items:
                a, b = build(item)
                nfa.eps[prev].append(a)
                prev = b
            nfa.eps[prev].append(f)
        elif isinstance(node, Alt):
            for item in node.items:
                a, b = build(item)
                nfa.eps[s].append(a)
                nfa.eps[b].append(f)
        elif isinstance(node, (Star, Plus)):
            a, b = build(node.child)
            nfa.eps[s].append(a)
            nfa.eps[b].extend((a, f))
            if isinstance(node, Star):
                nfa.eps[s].append(f)
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return s, f

    nfa.start, nfa.accept = build(ast)
    return nfa


@dataclass(frozen=True)
class Dfa:
    """Total, table-driven DFA; ``delta[q][c]`` is the successor of q on class c."""

    start: int
    finals: frozenset[int]
    delta: tuple[tuple[int, ...], ...]
    class_map: ClassMap

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def class_count(self) -> int:
        return self.class_map.class_count

    @cached_property
    def dead_states(self) -> frozenset[int]:
        """States from which no final state is reachable."""
        preds: list[set[int]] = [set() for _ in self.delta]
        for q, row in enumerate(self.delta):
            for t in row:
                preds[t].add(q)
        live = set(self.finals)
        queue = deque(self.finals)
        while queue:
            for p in preds[queue.popleft()]:
                if p not in live:
                    live.add(p)
                    queue.append(p)
        return frozenset(range(self.state_count)) - live

    def accepts(self, s: str | Sequence[int]) -> bool:
        return delta_string(self, self.start, s) in self.finals


def determinize(nfa: Nfa, class_map: ClassMap, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction; only reachable subsets are materialized."""
    k = nfa.class_count
    per_class: list[dict[int, list[int]]] = []
    for moves in nfa.moves:
        table: dict[int, list[int]] = {}
        for cs, t in moves:
            for c in cs:
                table.setdefault(c, []).append(t)
        per_class.append(table)

    start = nfa.closure([nfa.start])
    index = {start: 0}
    subsets = [start]
    rows: list[tuple[int, ...]] = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        row = []
        for c in range(k):
            nxt = nfa.closure(t for s in cur for t in per_class[s].get(c, ()))
            j = index.get(nxt)
            if j is None:
                if len(subsets) >= state_cap:
                    raise StateCapExceeded(f"determinization exceeded {state_cap} states")
                j = index[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    finals = frozenset(j for j, sub in enumerate(subsets) if nfa.accept in sub)
    return Dfa(0, finals, tuple(rows), class_map)


def _renumber(start: int, finals, delta, class_map: ClassMap) -> Dfa:
    """Breadth-first renumbering from ``start`` in class-id order."""
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for t in delta[q]:
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    rows = [()] * len(order)
    for q, new in order.items():
        rows[new] = tuple(order[t] for t in delta[q])
    return Dfa(0, frozenset(order[q] for q in finals if q in order), tuple(rows), class_map)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement followed by deterministic renumbering."""
    block = [1 if q in dfa.finals else 0 for q in range(dfa.state_count)]
    count = len(set(block))
    while True:
        sigs: dict[tuple, int] = {}
        new_block = []
        for q, row in enumerate(dfa.delta):
            sig = (block[q], tuple(block[t] for t in row))
            new_block.append(sigs.setdefault(sig, len(sigs)))
        block = new_block
        if len(sigs) == count:
            break
        count = len(sigs)
    quotient: dict[int, tuple[int, ...]] = {}
    for q, row in enumerate(dfa.delta):
        quotient.setdefault(block[q], tuple(block[t] for t in row))
    finals = {block[q] for q in dfa.finals}
    return _renumber(block[dfa.start], finals, quotient, dfa.class_map)


def compile_dfa(ast: RegexAst, class_map: ClassMap, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    return minimize(determinize(build_nfa(ast, class_map), class_map, state_cap))


def delta_string(dfa: Dfa, q: int, s: str | Sequence[int]) -> int:
    """Extended transition function; ``s`` is text or a sequence of class ids."""
    classes = dfa.class_map.encode(s) if isinstance(s, str) else s
    for c in classes:
        q = dfa.delta[q][c]
    return q


@dataclass
class MatchReport:
    """End-of-match positions plus read accounting for one scan."""

    positions: list[int]
    chars_read: int
    iterations: int
    read_indices: list[int] | None = None


def forward_scan(dfa: Dfa, s: str) -> MatchReport:
    """Classic left-to-right scan reporting every position where the DFA is final."""
    dfa.class_map.check_alphabet(s)
    table = dfa.class_map.table
    delta = dfa.delta
    final = [q in dfa.finals for q in range(dfa.state_count)]
    state = dfa.start
    positions = [0] if final[state] else []
    p = 0
    for p, ch in enumerate(s, 1):
        state = delta[state][table[ord(ch)]]
        if final[state]:
            positions.append(p)
    return MatchReport(positions, len(s), len(s))
