"""End-to-end pattern compilation: text -> AST -> classes -> DFA -> OFA."""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Dfa, compile_dfa
from .ofa import Ofa, build_ofa
from .regex import ClassMap, RegexAst, compute_equivalence_classes, parse_pattern, wrap_for_end_positions
from .trie import BudgetConfig

END_POSITIONS = "end-positions"
ANCHORED = "anchored"
MODES = (END_POSITIONS, ANCHORED)


@dataclass
class CompiledPattern:
    pattern: str
    mode: str
    ast: RegexAst
    class_map: ClassMap
    dfa: Dfa
    ofa: Ofa

    @property
    def lookaheads(self) -> list[int]:
        return [self.ofa.look[q] for q in range(self.dfa.state_count)]


def compile_pattern(pattern: str, mode: str = END_POSITIONS, budget: BudgetConfig | None = None,
                    alphabet: str | None = None) -> CompiledPattern:
    """Compile ``pattern`` into both the forward DFA and the OFA.

    In end-positions mode the pattern is matched anywhere (``Σ*e``); in
    anchored mode only prefixes of the input are tested.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    budget = budget or BudgetConfig()
    ast = parse_pattern(pattern)
    if mode == END_POSITIONS:
        ast = wrap_for_end_positions(ast)
    class_map = compute_equivalence_classes(ast, alphabet)
    dfa = compile_dfa(ast, class_map, budget.dfa_state_cap)
    return CompiledPattern(pattern, mode, ast, class_map, dfa, build_ofa(dfa, budget))
