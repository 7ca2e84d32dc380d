"""Line-oriented text dump of a compiled OFA.

::

    OFA 1
    classes <class_count>
    range <lo_hex> <hi_hex> <class_id>        (one per range)
    states <state_count> start <id>
    finals <id> ...
    phi <id> <value>                          (start and finals)
    look <dfa_state> <value>                  (every DFA state)
    root <dfa_state> <ofa_state>              (every reachable trie root)
    t <from> <class> <to> <theta>             (state_count * class_count lines)
"""

from __future__ import annotations

from .ofa import Ofa
from .regex import MAX_CODE_POINT, ClassMap

VERSION = 1


class OfaFormatError(ValueError):
    """Malformed OFA dump."""


class VersionMismatchError(OfaFormatError):
    pass


class TruncatedInputError(OfaFormatError):
    pass


class InconsistentTableError(OfaFormatError):
    pass


def serialize_ofa(ofa: Ofa) -> bytes:
    cm = ofa.class_map
    lines = [f"OFA {VERSION}", f"classes {cm.class_count}"]
    lines += [f"range {lo:x} {hi:x} {cid}" for lo, hi, cid in cm.ranges]
    lines.append(f"states {ofa.state_count} start {ofa.start}")
    lines.append(" ".join(["finals", *map(str, sorted(ofa.finals))]))
    lines += [f"phi {q} {v}" for q, v in sorted(ofa.phi.items())]
    lines += [f"look {q} {v}" for q, v in sorted(ofa.look.items())]
    lines += [f"root {q} {r}" for q, r in sorted(ofa.roots.items())]
    for q, (drow, trow) in enumerate(zip(ofa.delta, ofa.theta)):
        lines += [f"t {q} {c} {d} {t}" for c, (d, t) in enumerate(zip(drow, trow))]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _ints(fields: list[str], count: int, lineno: int, base: int = 10) -> list[int]:
    if len(fields) != count:
        raise OfaFormatError(f"line {lineno}: expected {count} fields, got {len(fields)}")
    try:
        return [int(f, base) for f in fields]
    except ValueError:
        raise OfaFormatError(f"line {lineno}: malformed number in {fields}") from None


def deserialize_ofa(data: bytes) -> Ofa:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise OfaFormatError(f"not UTF-8: {exc}") from None
    if not text:
        raise TruncatedInputError("empty input")
    lines = text.split("\n")
    if lines[0] != f"OFA {VERSION}":
        raise VersionMismatchError(f"expected header 'OFA {VERSION}', got {lines[0][:40]!r}")
    if lines[-1] != "":
        raise TruncatedInputError("input does not end with a newline")
    lines.pop()

    class_count = state_count = start = None
    ranges: list[tuple[int, int, int]] = []
    finals: list[int] | None = None
    phi: dict[int, int] = {}
    look: dict[int, int] = {}
    roots: dict[int, int] = {}
    trans: dict[tuple[int, int], tuple[int, int]] = {}

    def need(value, what, lineno):
        if value is None:
            raise OfaFormatError(f"line {lineno}: {what} must come first")
        return value

    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(" ")
        kind, rest = fields[0], fields[1:]
        if kind == "classes":
            (class_count,) = _ints(rest, 1, lineno)
        elif kind == "range":
            need(class_count, "classes", lineno)
            ranges.append(tuple(_ints(rest[:2], 2, lineno, 16) + _ints(rest[2:], 1, lineno)))
        elif kind == "states":
            if len(rest) != 3 or rest[1] != "start":
                raise OfaFormatError(f"line {lineno}: expected 'states <n> start <id>'")
            state_count, start = _ints([rest[0], rest[2]], 2, lineno)
        elif kind == "finals":
            need(state_count, "states", lineno)
            finals = _ints(rest, len(rest), lineno)
        elif kind in ("phi", "look", "root", "t"):
            need(state_count, "states", lineno)
            if kind == "phi":
                q, v = _ints(rest, 2, lineno)
                phi[q] = v
            elif kind == "look":
                q, v = _ints(rest, 2, lineno)
                look[q] = v
            elif kind == "root":
                q, r = _ints(rest, 2, lineno)
                roots[q] = r
            else:
                q, c, d, t = _ints(rest, 4, lineno)
                if (q, c) in trans:
                    raise InconsistentTableError(f"line {lineno}: duplicate transition ({q}, {c})")
                trans[(q, c)] = (d, t)
        else:
            raise OfaFormatError(f"line {lineno}: unknown directive {kind!r}")

    if class_count is None or state_count is None or finals is None:
        raise TruncatedInputError("missing classes, states or finals section")
    if len(trans) < state_count * class_count:
        raise TruncatedInputError(
            f"expected {state_count * class_count} transitions, found {len(trans)}")
    return _assemble(class_count, ranges, state_count, start, finals, phi, look, roots, trans)


def _assemble(class_count, ranges, state_count, start, finals, phi, look, roots, trans) -> Ofa:
    bad = InconsistentTableError
    if class_count < 1 or state_count < 1:
        raise bad("class and state counts must be positive")
    prev_hi = -1
    for lo, hi, cid in ranges:
        if not (prev_hi < lo <= hi <= MAX_CODE_POINT):
            raise bad(f"range {lo:x}-{hi:x} overlaps, is unordered or out of bounds")
        if not 0 <= cid < class_count:
            raise bad(f"range {lo:x}-{hi:x} has class {cid} >= {class_count}")
        prev_hi = hi
    if {cid for _, _, cid in ranges} != set(range(class_count)):
        raise bad("every class id must own at least one range")
    covered = sum(hi - lo + 1 for lo, hi, _ in ranges)
    restricted = covered != MAX_CODE_POINT + 1

    def check_state(q, what):
        if not 0 <= q < state_count:
            raise bad(f"{what} {q} is not below state count {state_count}")

    check_state(start, "start")
    for q in finals:
        check_state(q, "final state")
    for (q, c), (d, _) in trans.items():
        check_state(q, "transition source")
        check_state(d, "transition target")
        if not 0 <= c < class_count:
            raise bad(f"transition class {c} is not below class count {class_count}")
    if set(phi) != set(finals) | {start}:
        raise bad("phi must be defined exactly on the start and final states")
    for q in roots.values():
        check_state(q, "root")
    if not look or set(roots) - set(look):
        raise bad("every root needs a lookahead entry")

    delta = tuple(tuple(trans[(q, c)][0] for c in range(class_count)) for q in range(state_count))
    theta = tuple(tuple(trans[(q, c)][1] for c in range(class_count)) for q in range(state_count))
    class_map = ClassMap(class_count, tuple(ranges), restricted)
    return Ofa(start, frozenset(finals), delta, theta, phi, look, roots, class_map)
