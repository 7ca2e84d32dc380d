"""Offsetting finite automata: construction from a DFA and the skipping matcher."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .automata import Dfa, MatchReport
from .regex import ClassMap
from .trie import BudgetConfig, Leaf, Node, assign_offsets, build_trie, iter_nodes


@dataclass(frozen=True)
class Ofa:
    """A DFA whose transitions also move the input index by ``theta``.

    ``phi`` maps the start and final states to their position offset (the
    distance from the current position to the next index read). ``look`` and
    ``roots`` are keyed by the source DFA's state ids.
    """

    start: int
    finals: frozenset[int]
    delta: tuple[tuple[int, ...], ...]
    theta: tuple[tuple[int, ...], ...]
    phi: dict[int, int]
    look: dict[int, int]
    roots: dict[int, int]
    class_map: ClassMap

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def class_count(self) -> int:
        return self.class_map.class_count

    @property
    def max_lookahead(self) -> int:
        return max(self.look.values())

    @cached_property
    def _final_flags(self) -> list[bool]:
        return [q in self.finals for q in range(self.state_count)]

    @cached_property
    def _phi_list(self) -> list[int]:
        out = [0] * self.state_count
        for q, v in self.phi.items():
            out[q] = v
        return out

    @cached_property
    def dfa_state_of_root(self) -> dict[int, int]:
        return {v: k for k, v in self.roots.items()}


def link_tries(tries: dict[int, Node]) -> None:
    """Point every leaf slot at the root of the trie for the leaf's state."""
    nodes = [n for t in tries.values() for n in iter_nodes(t)]
    for n in nodes:
        for i, child in enumerate(n.children):
            if isinstance(child, Leaf):
                n.children[i] = tries[child.state]


def build_ofa(dfa: Dfa, budget: BudgetConfig | None = None) -> Ofa:
    budget = budget or BudgetConfig()
    tries: dict[int, Node] = {}
    look: dict[int, int] = {}
    for q in range(dfa.state_count):
        result = build_trie(q, dfa, budget)
        tries[q], look[q] = result.trie, result.lookahead
    for t in tries.values():
        assign_offsets(t, look)
    link_tries(tries)

    root = tries[dfa.start]
    number = {id(root): 0}
    order = [root]
    queue = deque([root])
    while queue:
        n = queue.popleft()
        for child in n.children:
            if id(child) not in number:
                number[id(child)] = len(order)
                order.append(child)
                queue.append(child)

    delta = tuple(tuple(number[id(c)] for c in n.children) for n in order)
    theta = tuple(tuple(n.offsets) for n in order)
    roots = {q: number[id(t)] for q, t in tries.items() if id(t) in number}
    finals = frozenset(roots[q] for q in dfa.finals if q in roots)
    phi = {roots[q]: look[q] - 1 for q in sorted(dfa.finals | {dfa.start}) if q in roots}
    return Ofa(0, finals, delta, theta, phi, look, roots, dfa.class_map)


def match_using_ofa(ofa: Ofa, s: str, track_reads: bool = False) -> MatchReport:
    """Report every end-of-match position, reading each input index at most once."""
    ofa.class_map.check_alphabet(s)
    table = ofa.class_map.table
    delta, theta = ofa.delta, ofa.theta
    final, phi = ofa._final_flags, ofa._phi_list
    state = ofa.start
    positions = [0] if final[state] else []
    index = phi[state]
    n = len(s)
    reads = 0
    if track_reads:
        read_indices = []
        while index < n:
            read_indices.append(index)
            c = table[ord(s[index])]
            index += theta[state][c]
            state = delta[state][c]
            reads += 1
            if final[state]:
                positions.append(index - phi[state])
        return MatchReport(positions, reads, reads, read_indices)
    while index < n:
        c = table[ord(s[index])]
        index += theta[state][c]
        state = delta[state][c]
        reads += 1
        if final[state]:
            positions.append(index - phi[state])
    return MatchReport(positions, reads, reads)


class TraceStep(NamedTuple):
    index: int
    char_class: int
    from_state: int
    to_state: int
    theta: int
    position: int | None


def trace_match(ofa: Ofa, s: str) -> list[TraceStep]:
    """Run the matcher and record one step per character read."""
    ofa.class_map.check_alphabet(s)
    final, phi = ofa._final_flags, ofa._phi_list
    state = ofa.start
    index = phi[state]
    steps = []
    while index < len(s):
        c = ofa.class_map.table[ord(s[index])]
        nxt = ofa.delta[state][c]
        off = ofa.theta[state][c]
        pos = index + off - phi[nxt] if final[nxt] else None
        steps.append(TraceStep(index, c, state, nxt, off, pos))
        index += off
        state = nxt
    return steps
