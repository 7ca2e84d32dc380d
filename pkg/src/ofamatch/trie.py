"""Reverse-scanning tries.

A trie for DFA state ``q`` with lookahead ``L`` maps any string ``s`` of
length ``L`` to ``delta(q, s)`` by reading ``s`` from its last character
backwards. Compressing nodes whose children are identical leaves lets the
lookup stop before reading all of ``s``; the unread prefix is what the
matcher skips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .automata import Dfa


@dataclass(frozen=True, slots=True)
class Leaf:
    state: int


@dataclass(slots=True, eq=False)
class Node:
    children: list["Trie"]
    level: int = 0
    offsets: list[int] | None = None

    def __eq__(self, other):
        # Structural equality; offsets are annotations, not structure.
        return (
            isinstance(other, Node)
            and self.level == other.level
            and self.children == other.children
        )


Trie = Union[Leaf, Node]


@dataclass(frozen=True)
class BudgetConfig:
    """Resource limits for automaton construction.

    ``max_nodes_per_trie`` bounds ``nodes * class_count``, the number of
    child slots a trie would hold.
    """

    max_lookahead: int = 12
    max_nodes_per_trie: int = 1 << 20
    dfa_state_cap: int = 1 << 20

    def __post_init__(self):
        for name in ("max_lookahead", "max_nodes_per_trie", "dfa_state_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_lookahead > 1 << 15:
            raise ValueError("max_lookahead must not exceed 32768")


@dataclass
class TrieBuildResult:
    trie: Node
    lookahead: int
    reached_final: bool


def iter_nodes(t: Trie) -> Iterator[Node]:
    """Pre-order walk over the interior nodes of an unlinked trie."""
    stack = [t]
    while stack:
        n = stack.pop()
        if isinstance(n, Node):
            yield n
            stack.extend(reversed(n.children))


def iter_leaves(t: Trie) -> Iterator[Leaf]:
    stack = [t]
    while stack:
        n = stack.pop()
        if isinstance(n, Leaf):
            yield n
        else:
            stack.extend(reversed(n.children))


def node_count(t: Trie) -> int:
    return sum(1 for _ in iter_nodes(t))


def depth(t: Trie) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(depth(c) for c in t.children)


def select_state(t: Trie, s: Sequence[int]) -> int:
    """Walk ``t`` consuming class ids from the end of ``s``; return the leaf state."""
    i = len(s)
    while isinstance(t, Node):
        i -= 1
        if i < 0:
            raise ValueError("string shorter than trie depth")
        t = t.children[s[i]]
    return t.state


def is_compressible(t: Trie) -> bool:
    if not isinstance(t, Node):
        return False
    first = t.children[0]
    if not isinstance(first, Leaf):
        return False
    return all(isinstance(c, Leaf) and c.state == first.state for c in t.children)


def evolve_and_compress(t: Trie, c: int, dfa: Dfa, level: int | None = None) -> Trie:
    """Copy ``t`` with every leaf state q replaced by ``delta(q, c)``, compressing bottom-up.

    ``level`` is the level given to the copy's root; it defaults to the
    level ``t`` already has.
    """
    if isinstance(t, Leaf):
        return Leaf(dfa.delta[t.state][c])
    lvl = t.level if level is None else level
    kids = [evolve_and_compress(child, c, dfa, lvl + 1) for child in t.children]
    node = Node(kids, lvl)
    if is_compressible(node):
        return kids[0]
    return node


def grow_trie(t: Trie, dfa: Dfa) -> Node:
    """Return a trie with lookahead one greater than ``t``'s; the root is never compressed."""
    return Node([evolve_and_compress(t, c, dfa, 1) for c in range(dfa.class_count)], 0)


def reached_final(t: Trie, finals) -> bool:
    return any(leaf.state in finals for leaf in iter_leaves(t))


def budget_allows_bigger_trie(q: int, t: Trie, lookahead: int, budget: BudgetConfig) -> bool:
    if lookahead >= budget.max_lookahead:
        return False
    class_count = len(t.children) if isinstance(t, Node) else 1
    return node_count(t) * class_count <= budget.max_nodes_per_trie


def build_trie(q: int, dfa: Dfa, budget: BudgetConfig | None = None) -> TrieBuildResult:
    """Grow the trie for ``q`` until a leaf is final or the budget stops it.

    States that cannot reach a final state get a lookahead-1 trie: nothing
    ever matches after them, so deeper tries would only waste space.
    """
    budget = budget or BudgetConfig()
    trie = grow_trie(Leaf(q), dfa)
    lookahead = 1
    if q in dfa.dead_states:
        return TrieBuildResult(trie, lookahead, False)
    done = reached_final(trie, dfa.finals)
    while not done and budget_allows_bigger_trie(q, trie, lookahead, budget):
        trie = grow_trie(trie, dfa)
        lookahead += 1
        done = reached_final(trie, dfa.finals)
    return TrieBuildResult(trie, lookahead, done)


def assign_offsets(t: Node, look: dict[int, int]) -> None:
    """Label each transition: -1 into an interior node, else level + look(target)."""
    for n in iter_nodes(t):
        offsets = []
        for child in n.children:
            if isinstance(child, Node):
                offsets.append(-1)
            else:
                try:
                    offsets.append(n.level + look[child.state])
                except KeyError:
                    raise KeyError(f"no lookahead for state {child.state}; "
                                   "build every trie before assigning offsets") from None
        n.offsets = offsets
