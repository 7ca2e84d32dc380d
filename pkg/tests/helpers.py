"""Shared oracles and generators for the test suite."""

import random
import re

from ofamatch.automata import compile_dfa
from ofamatch.regex import compute_equivalence_classes, parse_pattern, wrap_for_end_positions
from ofamatch.trie import BudgetConfig

EXAMPLE = "(a|b)*(abb)+"

# DFA states of the worked example after breadth-first renumbering.
Q1, Q2, Q3, Q4 = 0, 1, 2, 3
A, B = 0, 1

SMALL_ATOMS = ["a", "b", "c", "[ab]", "[bc]", "[^a]", "."]
WIDE_ATOMS = SMALL_ATOMS + ["\\n", "x", "[a-c]", "[^\\n]"]


def random_pattern(rng: random.Random, atoms=SMALL_ATOMS, depth: int = 3) -> str:
    """Random pattern text in the shared subset of our syntax and Python's ``re``."""
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        return rng.choice(atoms)
    if roll < 0.6:
        return "".join(random_pattern(rng, atoms, depth - 1) for _ in range(rng.randint(2, 3)))
    if roll < 0.75:
        return "(" + "|".join(random_pattern(rng, atoms, depth - 1)
                              for _ in range(rng.randint(2, 3))) + ")"
    inner = random_pattern(rng, atoms, depth - 1)
    return f"({inner}){rng.choice('*+?')}"


def random_text(rng: random.Random, alphabet: str, max_len: int) -> str:
    return "".join(rng.choices(alphabet, k=rng.randint(0, max_len)))


def python_regex(pattern: str) -> re.Pattern:
    return re.compile(pattern.replace("\\e", "(?:)"))


def brute_end_positions(pattern: str, s: str) -> list[int]:
    """O(n^2) end-position oracle built on Python's regex engine."""
    rx = python_regex(pattern)
    return [p for p in range(len(s) + 1)
            if any(rx.fullmatch(s, i, p) for i in range(p + 1))]


def brute_anchored_positions(pattern: str, s: str) -> list[int]:
    rx = python_regex(pattern)
    return [p for p in range(len(s) + 1) if rx.fullmatch(s, 0, p)]


def bfs_final_dist(dfa, q):
    """Length of the shortest nonempty string leading from q into a final state."""
    frontier = {q}
    seen = set()
    dist = 0
    while frontier:
        dist += 1
        nxt = {t for s in frontier for t in dfa.delta[s]}
        if nxt & dfa.finals:
            return dist
        frontier = nxt - seen
        seen |= nxt
    return None


SMALL_BUDGET = BudgetConfig(max_lookahead=6)


def dfa_for(pattern: str, mode: str = "end-positions", alphabet: str | None = None):
    """Minimal DFA for ``pattern`` without building an OFA."""
    ast = parse_pattern(pattern)
    if mode == "end-positions":
        ast = wrap_for_end_positions(ast)
    return compile_dfa(ast, compute_equivalence_classes(ast, alphabet))
