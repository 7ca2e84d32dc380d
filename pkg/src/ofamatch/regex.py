"""Pattern syntax, AST and alphabet reduction.

Grammar (no anchors, captures or backreferences)::

    alt     := concat ('|' concat)*
    concat  := repeat+
    repeat  := atom ('*' | '+' | '?')*
    atom    := literal | escape | '.' | class | '(' alt ')'
    class   := '[' '^'? item+ ']'        item := char | char '-' char

Escapes: ``\\uXXXX``, ``\\UXXXXXXXX``, ``\\n``, ``\\t``, ``\\r``, ``\\e``
(the empty string) and a backslash before any punctuation character.
``.`` is every code point except newline.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union

MAX_CODE_POINT = 0x10FFFF
NEWLINE = 0x0A

Ranges = tuple[tuple[int, int], ...]


class PatternSyntaxError(ValueError):
    """Raised for malformed patterns; ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message: str, pattern: str, index: int):
        self.offset = len(pattern[:index].encode("utf-8"))
        self.pattern = pattern
        super().__init__(f"{message} at byte offset {self.offset}")


def normalize_ranges(ranges: Iterable[tuple[int, int]]) -> Ranges:
    """Sort and merge overlapping or adjacent inclusive ranges."""
    out: list[list[int]] = []
    for lo, hi in sorted(ranges):
        if lo > hi:
            raise ValueError(f"empty range {lo:#x}-{hi:#x}")
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def complement_ranges(ranges: Ranges) -> Ranges:
    out = []
    nxt = 0
    for lo, hi in ranges:
        if lo > nxt:
            out.append((nxt, lo - 1))
        nxt = hi + 1
    if nxt <= MAX_CODE_POINT:
        out.append((nxt, MAX_CODE_POINT))
    return tuple(out)


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class CharSet:
    ranges: Ranges

    def __post_init__(self):
        if not self.ranges:
            raise ValueError("CharSet must be nonempty")
        object.__setattr__(self, "ranges", normalize_ranges(self.ranges))

    def __contains__(self, cp: int) -> bool:
        i = bisect.bisect_right(self.ranges, (cp, MAX_CODE_POINT + 1)) - 1
        return i >= 0 and self.ranges[i][0] <= cp <= self.ranges[i][1]


@dataclass(frozen=True)
class Concat:
    items: tuple["RegexAst", ...]


@dataclass(frozen=True)
class Alt:
    items: tuple["RegexAst", ...]


@dataclass(frozen=True)
class Star:
    child: "RegexAst"


@dataclass(frozen=True)
class Plus:
    child: "RegexAst"


@dataclass(frozen=True)
class Epsilon:
    pass


RegexAst = Union[CharSet, Concat, Alt, Star, Plus, Epsilon]

ANY = CharSet(((0, MAX_CODE_POINT),))
DOT = CharSet(((0, NEWLINE - 1), (NEWLINE + 1, MAX_CODE_POINT)))


def literal(ch: str) -> CharSet:
    return CharSet(((ord(ch), ord(ch)),))


def concat(*items: RegexAst) -> RegexAst:
    """Build a Concat, flattening nested concatenations and singletons."""
    flat: list[RegexAst] = []
    for item in items:
        flat.extend(item.items if isinstance(item, Concat) else (item,))
    if not flat:
        raise ValueError("concat needs at least one item")
    return flat[0] if len(flat) == 1 else Concat(tuple(flat))


def alt(*items: RegexAst) -> RegexAst:
    flat: list[RegexAst] = []
    for item in items:
        flat.extend(item.items if isinstance(item, Alt) else (item,))
    if not flat:
        raise ValueError("alt needs at least one item")
    return flat[0] if len(flat) == 1 else Alt(tuple(flat))


def iter_charsets(ast: RegexAst) -> Iterator[CharSet]:
    stack = [ast]
    while stack:
        node = stack.pop()
        if isinstance(node, CharSet):
            yield node
        elif isinstance(node, (Concat, Alt)):
            stack.extend(reversed(node.items))
        elif isinstance(node, (Star, Plus)):
            stack.append(node.child)


def wrap_for_end_positions(ast: RegexAst) -> RegexAst:
    """Return ``Σ* ast``; a DFA for it is final exactly at match end positions."""
    return Concat((Star(ANY), ast))


# -- parser ----------------------------------------------------------------

_META = set("|*+?()[].\\]")
_SIMPLE_ESCAPES = {"n": "\n", "t": "\t", "r": "\r"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, index: int | None = None) -> PatternSyntaxError:
        return PatternSyntaxError(message, self.text, self.pos if index is None else index)

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> RegexAst:
        if not self.text:
            raise self.error("empty pattern (use \\e for the empty string)")
        ast = self.parse_alt()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return ast

    def parse_alt(self) -> RegexAst:
        branches = [self.parse_concat()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.parse_concat())
        return alt(*branches)

    def parse_concat(self) -> RegexAst:
        items = []
        while self.peek() is not None and self.peek() not in "|)":
            items.append(self.parse_repeat())
        if not items:
            raise self.error("empty alternative")
        return concat(*items)

    def parse_repeat(self) -> RegexAst:
        node = self.parse_atom()
        while self.peek() in ("*", "+", "?"):
            op = self.text[self.pos]
            self.pos += 1
            if op == "*":
                node = Star(node)
            elif op == "+":
                node = Plus(node)
            else:
                node = alt(node, Epsilon())
        return node

    def parse_atom(self) -> RegexAst:
        start = self.pos
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            inner = self.parse_alt()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.pos += 1
            return inner
        if ch == "[":
            return self.parse_class()
        if ch == ".":
            self.pos += 1
            return DOT
        if ch in "*+?":
            raise self.error(f"nothing to repeat before {ch!r}")
        if ch in ")]":
            raise self.error(f"unbalanced {ch!r}")
        if ch == "\\":
            cp = self.parse_escape(in_class=False)
            return Epsilon() if cp is None else CharSet(((cp, cp),))
        self.pos += 1
        return literal(ch)

    def parse_escape(self, in_class: bool) -> int | None:
        start = self.pos
        self.pos += 1
        if self.pos >= len(self.text):
            raise self.error("dangling backslash", start)
        ch = self.text[self.pos]
        self.pos += 1
        if ch in ("u", "U"):
            width = 4 if ch == "u" else 8
            digits = self.text[self.pos:self.pos + width]
            if len(digits) != width or any(d not in "0123456789abcdefABCDEF" for d in digits):
                raise self.error(f"\\{ch} needs {width} hex digits", start)
            self.pos += width
            cp = int(digits, 16)
            if cp > MAX_CODE_POINT:
                raise self.error("code point out of range", start)
            return cp
        if ch in _SIMPLE_ESCAPES:
            return ord(_SIMPLE_ESCAPES[ch])
        if ch == "e" and not in_class:
            return None
        if ch.isalnum():
            raise self.error(f"unknown escape \\{ch}", start)
        return ord(ch)

    def parse_class_char(self) -> int:
        ch = self.peek()
        if ch is None:
            raise self.error("unterminated character class")
        if ch == "\\":
            return self.parse_escape(in_class=True)
        self.pos += 1
        return ord(ch)

    def parse_class(self) -> CharSet:
        start = self.pos
        self.pos += 1
        negate = self.peek() == "^"
        if negate:
            self.pos += 1
        ranges = []
        while self.peek() != "]":
            if self.peek() is None:
                raise self.error("unterminated character class", start)
            lo = self.parse_class_char()
            hi = lo
            if self.peek() == "-" and self.text[self.pos + 1:self.pos + 2] not in ("]", ""):
                self.pos += 1
                hi = self.parse_class_char()
                if hi < lo:
                    raise self.error("reversed range in class", start)
            ranges.append((lo, hi))
        self.pos += 1
        if not ranges:
            raise self.error("empty character class", start)
        merged = normalize_ranges(ranges)
        if negate:
            merged = complement_ranges(merged)
            if not merged:
                raise self.error("negated class matches nothing", start)
        return CharSet(merged)


def parse_pattern(text: str) -> RegexAst:
    return _Parser(text).parse()


# -- canonical printer -----------------------------------------------------


def _escape_cp(cp: int, in_class: bool) -> str:
    ch = chr(cp)
    if cp > 0xFFFF:
        return f"\\U{cp:08x}"
    if ch == "\n":
        return "\\n"
    if ch == "\t":
        return "\\t"
    if ch == "\r":
        return "\\r"
    if cp < 0x20 or 0x7F <= cp < 0xA0 or 0xD800 <= cp <= 0xDFFF or not ch.isprintable():
        return f"\\u{cp:04x}"
    special = "\\]^-[" if in_class else _META
    return "\\" + ch if ch in special else ch


def format_pattern(ast: RegexAst) -> str:
    """Print ``ast`` so that ``parse_pattern(format_pattern(ast)) == ast``."""
    if isinstance(ast, CharSet):
        if len(ast.ranges) == 1 and ast.ranges[0][0] == ast.ranges[0][1]:
            return _escape_cp(ast.ranges[0][0], in_class=False)
        parts = []
        for lo, hi in ast.ranges:
            parts.append(_escape_cp(lo, True))
            if hi > lo:
                parts.append("-" + _escape_cp(hi, True))
        return "[" + "".join(parts) + "]"
    if isinstance(ast, Epsilon):
        return "\\e"
    if isinstance(ast, Alt):
        return "|".join(format_pattern(item) for item in ast.items)
    if isinstance(ast, Concat):
        return "".join(
            f"({format_pattern(item)})" if isinstance(item, Alt) else format_pattern(item)
            for item in ast.items
        )
    op = "*" if isinstance(ast, Star) else "+"
    inner = format_pattern(ast.child)
    if isinstance(ast.child, (Alt, Concat)):
        inner = f"({inner})"
    return inner + op


# -- equivalence classes ---------------------------------------------------


@dataclass(frozen=True)
class ClassMap:
    """Partition of code points into equivalence classes.

    ``ranges`` holds ``(lo, hi, class_id)`` triples sorted by ``lo``. They
    cover ``[0, MAX_CODE_POINT]`` unless the map was built for a restricted
    alphabet, in which case code points outside it have no class.
    """

    class_count: int
    ranges: tuple[tuple[int, int, int], ...]
    restricted: bool = False
    _starts: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_starts", tuple(lo for lo, _, _ in self.ranges))

    def class_of(self, cp: int) -> int:
        """Class id of ``cp``, or -1 if the (restricted) alphabet lacks it."""
        i = bisect.bisect_right(self._starts, cp) - 1
        if i >= 0 and cp <= self.ranges[i][1]:
            return self.ranges[i][2]
        return -1

    @cached_property
    def table(self) -> list[int]:
        """Dense code point -> class id lookup (-1 for code points without a class)."""
        tbl = [-1] * (MAX_CODE_POINT + 1)
        for lo, hi, cid in self.ranges:
            tbl[lo:hi + 1] = [cid] * (hi - lo + 1)
        return tbl

    @cached_property
    def alphabet(self) -> frozenset[str]:
        if not self.restricted:
            raise ValueError("only restricted class maps have a finite alphabet")
        return frozenset(chr(cp) for lo, hi, _ in self.ranges for cp in range(lo, hi + 1))

    def representative(self, class_id: int) -> str:
        """Lowest code point of a class, as a character."""
        for lo, _, cid in self.ranges:
            if cid == class_id:
                return chr(lo)
        raise KeyError(class_id)

    def classes_in(self, charset: CharSet) -> frozenset[int]:
        return frozenset(cid for lo, hi, cid in self.ranges if lo in charset)

    def encode(self, s: str) -> list[int]:
        """Map a string to class ids, rejecting characters outside the alphabet."""
        out = [self.class_of(ord(ch)) for ch in s]
        if -1 in out:
            i = out.index(-1)
            raise ValueError(f"character {s[i]!r} at index {i} is outside the alphabet")
        return out

    def check_alphabet(self, s: str) -> None:
        if self.restricted:
            extra = set(s) - self.alphabet
            if extra:
                i = min(s.index(ch) for ch in extra)
                raise ValueError(f"character {s[i]!r} at index {i} is outside the alphabet")


def compute_equivalence_classes(ast: RegexAst, alphabet: str | None = None) -> ClassMap:
    """Coarsest partition of the alphabet that no CharSet in ``ast`` splits.

    ``alphabet`` restricts the universe to the given characters; by default
    the universe is every code point.
    """
    if alphabet is None:
        universe: Ranges = ((0, MAX_CODE_POINT),)
    else:
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        universe = normalize_ranges((ord(c), ord(c)) for c in alphabet)
    sets = sorted(set(iter_charsets(ast)), key=lambda cs: cs.ranges)

    bounds = set()
    for lo, hi in universe:
        bounds.update((lo, hi + 1))
    for cs in sets:
        for lo, hi in cs.ranges:
            bounds.update((lo, hi + 1))
    cuts = sorted(bounds)

    signatures: dict[tuple[bool, ...], int] = {}
    ranges: list[list[int]] = []
    u = 0
    for lo, nxt in zip(cuts, cuts[1:]):
        while u < len(universe) and universe[u][1] < lo:
            u += 1
        if u == len(universe) or lo < universe[u][0]:
            continue
        sig = tuple(lo in cs for cs in sets)
        cid = signatures.setdefault(sig, len(signatures))
        if ranges and ranges[-1][2] == cid and ranges[-1][1] == lo - 1:
            ranges[-1][1] = nxt - 1
        else:
            ranges.append([lo, nxt - 1, cid])
    return ClassMap(
        class_count=len(signatures),
        ranges=tuple((lo, hi, cid) for lo, hi, cid in ranges),
        restricted=alphabet is not None,
    )
