"""Benchmark harness comparing the forward DFA scan with the OFA matcher."""

from __future__ import annotations

import csv
import dataclasses
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from pathlib import Path
from typing import Callable, Iterable

from .automata import forward_scan
from .compile import END_POSITIONS, CompiledPattern, compile_pattern
from .ofa import match_using_ofa
from .trie import BudgetConfig

log = logging.getLogger(__name__)


@dataclass
class BenchRecord:
    pattern_id: str
    class_count: int = 0
    max_lookahead: int = 0
    pct_positions_matched: float = 0.0
    ofa_pct_chars_processed: float = 0.0
    forward_elapsed: float = 0.0
    ofa_elapsed: float = 0.0
    ofa_space_words: int = 0
    forward_space_words: int = 0
    error: str = ""

    @property
    def ofa_pct_time(self) -> float:
        return self.ofa_elapsed / self.forward_elapsed if self.forward_elapsed else float("nan")


FIELDS = [f.name for f in dataclasses.fields(BenchRecord)]


def read_patterns(path: str | Path) -> list[tuple[str, str]]:
    """Parse ``id<TAB>pattern`` lines; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        pid, sep, pattern = line.partition("\t")
        if not sep or not pattern:
            raise ValueError(f"{path}:{lineno}: expected 'id<TAB>pattern'")
        out.append((pid, pattern))
    return out


def space_words(compiled: CompiledPattern) -> tuple[int, int]:
    """32-bit words of transition tables: (forward delta, OFA delta + theta)."""
    k = compiled.class_map.class_count
    return compiled.dfa.state_count * k, 2 * compiled.ofa.state_count * k


def best_of(fn: Callable[[], object], repetitions: int, warmup: int = 1) -> float:
    for _ in range(warmup):
        fn()
    best = float("inf")
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _try_compile(pattern: str, mode: str, budget: BudgetConfig | None) -> CompiledPattern | str:
    try:
        return compile_pattern(pattern, mode, budget)
    except Exception as exc:  # recorded per pattern; the harness keeps going
        return f"compile: {exc}"


def bench_pattern(pid: str, pattern: str, text: str, repetitions: int = 3,
                  mode: str = END_POSITIONS, budget: BudgetConfig | None = None,
                  compiled: CompiledPattern | str | None = None) -> BenchRecord:
    """Benchmark one pattern. ``compiled`` may carry a precompiled result (or its error)."""
    rec = BenchRecord(pid)
    if compiled is None:
        compiled = _try_compile(pattern, mode, budget)
    if isinstance(compiled, str):
        rec.error = compiled
        return rec
    rec.class_count = compiled.class_map.class_count
    rec.max_lookahead = compiled.ofa.max_lookahead
    rec.forward_space_words, rec.ofa_space_words = space_words(compiled)

    fwd = forward_scan(compiled.dfa, text)
    ofa = match_using_ofa(compiled.ofa, text)
    if fwd.positions != ofa.positions:
        rec.error = "oracle mismatch"
        return rec
    rec.pct_positions_matched = len(ofa.positions) / (len(text) + 1)
    rec.ofa_pct_chars_processed = ofa.chars_read / len(text) if text else 0.0
    rec.forward_elapsed = best_of(lambda: forward_scan(compiled.dfa, text), repetitions)
    rec.ofa_elapsed = best_of(lambda: match_using_ofa(compiled.ofa, text), repetitions)
    return rec


def run_bench(patterns_file: str | Path, corpus_path: str | Path, repetitions: int = 3,
              mode: str = END_POSITIONS, budget: BudgetConfig | None = None,
              jobs: int = 1) -> list[BenchRecord]:
    """Benchmark every pattern in the file.

    With ``jobs > 1`` the patterns are compiled in worker processes first.
    Matching and timing always run one pattern at a time.
    """
    text = Path(corpus_path).read_text(encoding="utf-8")
    patterns = read_patterns(patterns_file)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            compiled = list(pool.map(_try_compile, [p for _, p in patterns],
                                     repeat(mode), repeat(budget)))
    else:
        compiled = [None] * len(patterns)
    records = []
    for (pid, pattern), pre in zip(patterns, compiled):
        log.info("benchmarking %s", pid)
        records.append(bench_pattern(pid, pattern, text, repetitions, mode, budget, pre))
    return records


def write_csv(records: Iterable[BenchRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FIELDS)
        for rec in records:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in dataclasses.astuple(rec)])


def read_csv(path: str | Path) -> list[BenchRecord]:
    types = {f.name: f.type for f in dataclasses.fields(BenchRecord)}
    convert = {"int": int, "float": float, "str": str}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [BenchRecord(**{k: convert[types[k]](v) for k, v in row.items()}) for row in reader]
