"""Command-line interface: ``ofa compile|find|trace|dump|bench|corpus``."""

from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path

from .automata import StateCapExceeded, forward_scan
from .compile import ANCHORED, END_POSITIONS, compile_pattern
from .ofa import Ofa, match_using_ofa, trace_match
from .regex import PatternSyntaxError
from .serialize import OfaFormatError, deserialize_ofa, serialize_ofa
from .trie import BudgetConfig

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET, EXIT_IO, EXIT_MISMATCH = range(6)

BUILTIN_PATTERNS = ("english", "dna")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_size(text: str) -> int:
    units = {"K": 10**3, "M": 10**6, "G": 10**9}
    text = text.strip().upper().removesuffix("B")
    if text and text[-1] in units:
        return int(float(text[:-1]) * units[text[-1]])
    return int(text)


def _add_compile_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--anchored", action="store_true",
                   help="match prefixes only instead of end positions anywhere")
    p.add_argument("--alphabet", help="restrict the input alphabet to these characters")
    p.add_argument("--max-lookahead", type=int, default=BudgetConfig.max_lookahead)
    p.add_argument("--max-nodes", type=int, default=BudgetConfig.max_nodes_per_trie,
                   help="cap on trie nodes times class count")
    p.add_argument("--state-cap", type=int, default=BudgetConfig.dfa_state_cap,
                   help="cap on DFA states during subset construction")


def _budget(args) -> BudgetConfig:
    try:
        return BudgetConfig(args.max_lookahead, args.max_nodes, args.state_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _compile(args, pattern: str):
    mode = ANCHORED if args.anchored else END_POSITIONS
    return compile_pattern(pattern, mode, _budget(args), args.alphabet)


def _read_text(path: str) -> str:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return data.decode("utf-8")


def _split_sources(args, want_input: bool):
    """Resolve ``[PATTERN] [INPUT]`` positionals against ``--automaton``."""
    need = (0 if args.automaton else 1) + (1 if want_input else 0)
    if len(args.sources) != need:
        what = "INPUT" if args.automaton else "PATTERN" + (" INPUT" if want_input else "")
        raise UsageError(f"expected {what}")
    pattern = None if args.automaton else args.sources[0]
    text_path = args.sources[-1] if want_input else None
    return pattern, text_path


def _load(args, pattern):
    """Return (ofa, dfa-or-None)."""
    if args.automaton:
        return deserialize_ofa(Path(args.automaton).read_bytes()), None
    compiled = _compile(args, pattern)
    return compiled.ofa, compiled.dfa


def _print_trace(ofa: Ofa, text: str, out) -> None:
    out.write("index\tclass\tfrom\tto\ttheta\tposition\n")
    for step in trace_match(ofa, text):
        pos = "" if step.position is None else str(step.position)
        out.write(f"{step.index}\t{step.char_class}\t{step.from_state}\t{step.to_state}"
                  f"\t{step.theta:+d}\t{pos}\n")


def cmd_compile(args) -> int:
    compiled = _compile(args, args.pattern)
    print(f"classes\t{compiled.class_map.class_count}")
    print(f"dfa_states\t{compiled.dfa.state_count}")
    print("lookaheads\t" + " ".join(map(str, compiled.lookaheads)))
    print(f"ofa_states\t{compiled.ofa.state_count}")
    if args.output:
        Path(args.output).write_bytes(serialize_ofa(compiled.ofa))
    return EXIT_OK


def cmd_find(args) -> int:
    pattern, text_path = _split_sources(args, want_input=True)
    if args.oracle_check and pattern is None:
        raise UsageError("--oracle-check needs a pattern, not a compiled automaton")
    ofa, dfa = _load(args, pattern)
    text = _read_text(text_path)
    report = match_using_ofa(ofa, text)
    out = sys.stdout
    for p in report.positions:
        out.write(f"{p}\n")
    if args.trace:
        _print_trace(ofa, text, out)
    if args.stats:
        skip = 1 - report.chars_read / len(text) if text else 0.0
        out.write(f"chars_read\t{report.chars_read}\nlength\t{len(text)}\nskip_fraction\t{skip:.6f}\n")
    if args.oracle_check:
        expected = forward_scan(dfa, text).positions
        if expected != report.positions:
            missing = sorted(set(expected) - set(report.positions))[:10]
            extra = sorted(set(report.positions) - set(expected))[:10]
            print(f"oracle mismatch: missing {missing} extra {extra}", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_trace(args) -> int:
    pattern, text_path = _split_sources(args, want_input=True)
    ofa, _ = _load(args, pattern)
    _print_trace(ofa, _read_text(text_path), sys.stdout)
    return EXIT_OK


def cmd_dump(args) -> int:
    pattern, _ = _split_sources(args, want_input=False)
    ofa, _ = _load(args, pattern)
    sys.stdout.write(serialize_ofa(ofa).decode("utf-8"))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench, write_csv

    patterns = args.patterns
    if patterns in BUILTIN_PATTERNS:
        patterns = resources.files("ofamatch") / "data" / f"{patterns}.tsv"
    mode = ANCHORED if args.anchored else END_POSITIONS
    records = run_bench(patterns, args.corpus, args.repetitions, mode, _budget(args), args.jobs)
    print("pattern_id\t#EC\tmaxLA\t%matched\t%chars\t%time\tspace(fwd+ofa)\terror")
    for r in records:
        print(f"{r.pattern_id}\t{r.class_count}\t{r.max_lookahead}\t{100 * r.pct_positions_matched:.5f}"
              f"\t{100 * r.ofa_pct_chars_processed:.1f}\t{100 * r.ofa_pct_time:.1f}"
              f"\t{r.forward_space_words}+{r.ofa_space_words}\t{r.error}")
    if args.csv:
        write_csv(records, args.csv)
    if args.figures:
        from .plots import render_bench_figures

        for path in render_bench_figures(records, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_MISMATCH if any(r.error == "oracle mismatch" for r in records) else EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import make_corpus, repeat_to_size, synthetic_dna

    size = parse_size(args.size)
    if args.synthetic_dna:
        if args.source:
            raise UsageError("give either SOURCE or --synthetic-dna")
        Path(args.output).write_bytes(repeat_to_size(synthetic_dna(size, args.seed), size))
    elif args.source:
        make_corpus(args.source, args.output, size, args.transform)
    else:
        raise UsageError("need SOURCE or --synthetic-dna")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ofa", description="Regex matching with offsetting finite automata.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile a pattern and report automaton sizes")
    p.add_argument("pattern")
    p.add_argument("-o", "--output", help="write the OFA dump here")
    _add_compile_opts(p)
    p.set_defaults(func=cmd_compile)

    for name, func, help_ in (("find", cmd_find, "print end-of-match positions"),
                              ("trace", cmd_trace, "print every step of the matcher")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("sources", nargs="+", metavar="[PATTERN] INPUT",
                       help="pattern (unless --automaton) and input file ('-' for stdin)")
        p.add_argument("-a", "--automaton", help="load a compiled OFA dump instead of a pattern")
        if name == "find":
            p.add_argument("--stats", action="store_true")
            p.add_argument("--trace", action="store_true")
            p.add_argument("--oracle-check", action="store_true",
                           help="also run the forward DFA scan and fail on any difference")
        _add_compile_opts(p)
        p.set_defaults(func=func)

    p = sub.add_parser("dump", help="print the OFA text format")
    p.add_argument("sources", nargs="*", metavar="PATTERN")
    p.add_argument("-a", "--automaton")
    _add_compile_opts(p)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("bench", help="benchmark patterns on a corpus")
    p.add_argument("patterns", help=f"id<TAB>pattern file, or one of {BUILTIN_PATTERNS}")
    p.add_argument("corpus")
    p.add_argument("-r", "--repetitions", type=int, default=3)
    p.add_argument("--csv", help="write records as CSV")
    p.add_argument("--figures", help="directory for PNG figures")
    p.add_argument("-j", "--jobs", type=int, default=1,
                   help="compile patterns in this many processes (timing stays sequential)")
    _add_compile_opts(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("corpus", help="build a benchmark corpus of a fixed size")
    p.add_argument("source", nargs="?")
    p.add_argument("output")
    p.add_argument("--size", default="10M", help="target size in bytes (K/M/G suffixes)")
    p.add_argument("--transform", choices=("lowercase", "strip-newlines", "none"), default="none")
    p.add_argument("--synthetic-dna", action="store_true",
                   help="generate random nucleotide text instead of reading SOURCE")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ofa: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PatternSyntaxError as exc:
        print(f"ofa: pattern error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OfaFormatError as exc:
        print(f"ofa: malformed automaton: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StateCapExceeded as exc:
        print(f"ofa: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnicodeDecodeError as exc:
        print(f"ofa: input is not UTF-8: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"ofa: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # characters outside a restricted alphabet
        print(f"ofa: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
