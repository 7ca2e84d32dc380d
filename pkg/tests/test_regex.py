import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofamatch.automata import compile_dfa
from ofamatch.regex import (
    ANY, DOT, MAX_CODE_POINT, Alt, CharSet, Concat, Epsilon, Plus, PatternSyntaxError, Star,
    alt, compute_equivalence_classes, concat, format_pattern, iter_charsets, literal,
    parse_pattern, wrap_for_end_positions,
)


def lit(s):
    return concat(*(literal(ch) for ch in s))


class TestParse:
    def test_example_pattern(self):
        ast = parse_pattern("(a|b)*(abb)+")
        assert ast == Concat((Star(Alt((literal("a"), literal("b")))), Plus(lit("abb"))))

    def test_single_literal(self):
        assert parse_pattern("a") == CharSet(((97, 97),))

    def test_dna7_full_range(self):
        ast = parse_pattern("AGT[\\u0000-\\uffff]*AGT")
        full_bmp = CharSet(((0, 0xFFFF),))
        assert ast == Concat((*lit("AGT").items, Star(full_bmp), *lit("AGT").items))

    def test_dot_excludes_newline_only(self):
        assert parse_pattern(".") == DOT
        assert 0x0A not in DOT and 0x09 in DOT and MAX_CODE_POINT in DOT

    def test_optional_desugars_to_alt_with_epsilon(self):
        assert parse_pattern("a?") == Alt((literal("a"), Epsilon()))

    @pytest.mark.parametrize("text, expected", [
        ("\\n", literal("\n")),
        ("\\\\", literal("\\")),
        ("\\u00e9", literal("é")),
        ("\\U0001f600", CharSet(((0x1F600, 0x1F600),))),
        ("\\e", Epsilon()),
        ("\\*", literal("*")),
        ("[^\\n]", DOT),
        ("[a-cx]", CharSet(((97, 99), (120, 120)))),
        ("[-a]", CharSet(((45, 45), (97, 97)))),
        ("[a-]", CharSet(((45, 45), (97, 97)))),
        ("a|b|c", Alt((literal("a"), literal("b"), literal("c")))),
        ("((a))", literal("a")),
    ])
    def test_syntax_table(self, text, expected):
        assert parse_pattern(text) == expected

    def test_singletons_are_normalized_away(self):
        node = parse_pattern("(a)(b|c)")
        assert isinstance(node, Concat) and len(node.items) == 2

    @pytest.mark.parametrize("text, offset", [
        ("", 0), ("a|", 2), ("(ab", 0), ("ab)", 2), ("*a", 0), ("[ab", 0), ("a\\", 1),
        ("\\q", 0), ("[]", 0), ("[b-a]", 0), ("\\u12", 0), ("é(", 3),
    ])
    def test_syntax_errors_report_byte_offset(self, text, offset):
        with pytest.raises(PatternSyntaxError) as info:
            parse_pattern(text)
        assert info.value.offset == offset


class TestEquivalenceClasses:
    def test_benglish3_has_three_classes(self):
        assert compute_equivalence_classes(parse_pattern("[a-z][a-z0-9]*[a-z]")).class_count == 3

    def test_dna6_has_three_classes(self):
        assert compute_equivalence_classes(parse_pattern("TTTTTTTTTT[AG]")).class_count == 3

    def test_bmp_range_alone(self):
        # Oracle: the range [0, 0xffff] against the full space leaves the
        # supplementary planes as a second block.
        cm = compute_equivalence_classes(parse_pattern("[\\u0000-\\uffff]"))
        assert cm.class_count == 2
        assert cm.ranges == ((0, 0xFFFF, 0), (0x10000, MAX_CODE_POINT, 1))

    def test_full_space_pattern_has_one_class(self):
        assert compute_equivalence_classes(Star(ANY)).class_count == 1

    def test_alternation_of_words(self):
        # 11 distinct letters plus everything else
        cm = compute_equivalence_classes(parse_pattern("benjamin|franklin"))
        assert cm.class_count == 12

    def test_literal_with_space(self):
        # 12 distinct characters including the space, plus everything else
        cm = compute_equivalence_classes(parse_pattern("benjamin franklin"))
        assert cm.class_count == 13

    def test_class_zero_is_lowest_range(self):
        cm = compute_equivalence_classes(parse_pattern("b|a"))
        assert cm.ranges[0] == (0, 96, 0)
        assert cm.class_of(ord("a")) == 1 and cm.class_of(ord("b")) == 2

    def test_restricted_alphabet(self):
        cm = compute_equivalence_classes(parse_pattern("(a|b)*(abb)+"), alphabet="ba")
        assert cm.class_count == 2 and cm.restricted
        assert cm.class_of(ord("c")) == -1
        with pytest.raises(ValueError):
            cm.encode("abc")

    def test_table_agrees_with_bisect(self):
        cm = compute_equivalence_classes(parse_pattern("[a-f]x|\\U0001f600"))
        for cp in (0, 96, 97, 102, 103, 120, 0xFFFF, 0x1F600, MAX_CODE_POINT):
            assert cm.table[cp] == cm.class_of(cp)


def test_wrap_builds_sigma_star_prefix():
    e = parse_pattern("abb")
    assert wrap_for_end_positions(e) == Concat((Star(ANY), e))


def test_wrap_is_not_simplified():
    once = wrap_for_end_positions(parse_pattern("abb"))
    assert wrap_for_end_positions(once) == Concat((Star(ANY), once))


def test_wrapped_example_accepts_foreign_prefix():
    ast = wrap_for_end_positions(parse_pattern("(a|b)*(abb)+"))
    dfa = compile_dfa(ast, compute_equivalence_classes(ast))
    assert dfa.accepts("xxabb")
    assert not dfa.accepts("xxab")


# -- properties ---------------------------------------------------------------

_cps = st.sampled_from([0, 9, 10, 32, 45, 92, 93, 94, 97, 98, 99, 122, 0xE9, 0xFFFF, 0x1F600])


@st.composite
def charsets(draw):
    los = draw(st.lists(_cps, min_size=1, max_size=3))
    return CharSet(tuple((lo, draw(st.sampled_from([lo, lo + 1, lo + 5]))) for lo in los))


def asts(max_leaves=8):
    return st.recursive(
        st.one_of(charsets(), st.just(Epsilon())),
        lambda kids: st.one_of(
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: concat(*xs)),
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: alt(*xs)),
            kids.map(Star), kids.map(Plus),
        ),
        max_leaves=max_leaves,
    )


@settings(max_examples=300)
@given(asts())
def test_print_parse_round_trip(ast):
    assert parse_pattern(format_pattern(ast)) == ast


def _boundaries(sets):
    pts = {0}
    for cs in sets:
        for lo, hi in cs.ranges:
            pts.update((lo, hi + 1))
    return sorted(p for p in pts if p <= MAX_CODE_POINT)


@settings(max_examples=150)
@given(asts())
def test_classes_respect_every_charset(ast):
    cm = compute_equivalence_classes(ast)
    sets = list(iter_charsets(ast))
    # Oracle: membership is constant between consecutive boundaries, so probing
    # each boundary point covers every distinct behaviour.
    probes = _boundaries(sets) + [lo for lo, _, _ in cm.ranges] + [hi for _, hi, _ in cm.ranges]
    members: dict[int, tuple] = {}
    for cp in probes:
        sig = tuple(cp in cs for cs in sets)
        assert members.setdefault(cm.class_of(cp), sig) == sig


@settings(max_examples=150)
@given(asts())
def test_partition_is_coarsest_and_complete(ast):
    cm = compute_equivalence_classes(ast)
    sets = list(iter_charsets(ast))
    assert cm.ranges[0][0] == 0 and cm.ranges[-1][1] == MAX_CODE_POINT
    for (_, hi, _), (lo, _, _) in zip(cm.ranges, cm.ranges[1:]):
        assert lo == hi + 1
    assert {cid for _, _, cid in cm.ranges} == set(range(cm.class_count))
    sig_of = {}
    for lo, _, cid in cm.ranges:
        sig_of[cid] = tuple(lo in cs for cs in sets)
    # merging two classes would put characters with different memberships together
    assert len(set(sig_of.values())) == cm.class_count
