"""Sublinear regex end-position matching with offsetting finite automata."""

from .automata import Dfa, MatchReport, StateCapExceeded, delta_string, forward_scan
from .compile import ANCHORED, END_POSITIONS, CompiledPattern, compile_pattern
from .ofa import Ofa, TraceStep, build_ofa, match_using_ofa, trace_match
from .regex import ClassMap, PatternSyntaxError, compute_equivalence_classes, parse_pattern
from .serialize import deserialize_ofa, serialize_ofa
from .trie import BudgetConfig

__all__ = [
    "ANCHORED", "END_POSITIONS", "BudgetConfig", "ClassMap", "CompiledPattern", "Dfa",
    "MatchReport", "Ofa", "PatternSyntaxError", "StateCapExceeded", "TraceStep", "build_ofa",
    "compile_pattern", "compute_equivalence_classes", "delta_string", "deserialize_ofa",
    "forward_scan", "match_using_ofa", "parse_pattern", "serialize_ofa", "trace_match",
]
