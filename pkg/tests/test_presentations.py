import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistedalex.presentations import (
    AbelianizationMap,
    Presentation,
    PresentationSyntaxError,
    Word,
    bundled_knots,
    free_reduce,
    load_presentation,
    parse_presentation,
    parse_word,
    validate_abelianization,
)

FIG8 = "<x1,x2,x3,x4 | x4 x2 x4^-1 x1^-1, x1 x2 x1^-1 x3^-1, x2 x4 x2^-1 x3^-1>"

letters = st.integers(1, 4).flatmap(lambda g: st.sampled_from([g, -g]))
words = st.lists(letters, max_size=12).map(Word)


def test_parse_commutator():
    p = parse_presentation("<x1, x2 | x1 x2 x1^-1 x2^-1>")
    assert p.ngens == 2
    assert p.relators == (Word([1, 2, -1, -2]),)


def test_parse_figure_eight():
    p = parse_presentation(FIG8)
    assert (p.ngens, p.nrels) == (4, 3)
    assert p.relators[0] == Word([4, 2, -4, -1])
    assert p.relators[1] == Word([1, 2, -1, -3])
    assert p.relators[2] == Word([2, 4, -2, -3])


def test_empty_relator_after_reduction():
    with pytest.raises(PresentationSyntaxError, match="empty after free reduction"):
        parse_presentation("<x1 | x1 x1^-1>")


def test_unknown_generator_reports_position():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("<a, b |\n  a b c>")
    assert (exc.value.line, exc.value.column) == (2, 7)


def test_duplicate_generator():
    with pytest.raises(PresentationSyntaxError, match="duplicate"):
        parse_presentation("<a, a | a>")


@pytest.mark.parametrize("bad", ["x1 | x1>", "<x1 x1>", "<x1 | x1", "<x1 | x1 $ >", "<x1 | x1,>"])
def test_syntax_errors(bad):
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(bad)


def test_powers_and_comments():
    p = parse_presentation("# header comment\nname: t\n<a, b | a^3 b^-2  # trailing\n>")
    assert p.name == "t"
    assert p.relators == (Word([1, 1, 1, -2, -2]),)


def test_no_relators():
    p = parse_presentation("< x1 | >")
    assert p.ngens == 1 and p.nrels == 0


def test_multidigit_names():
    p = parse_presentation("<x1, x12 | x12 x1 x12^-1 x1^-1>")
    assert p.relators[0] == Word([2, 1, -2, -1])


@pytest.mark.parametrize(
    "w, expected",
    [([1, 2, -2, 3], [1, 3]), ([1, -1], []), ([4, 2, -4, -1], [4, 2, -4, -1]), ([1, 2, -2, -1, 3], [3])],
)
def test_free_reduce(w, expected):
    assert free_reduce(w) == Word(expected)


@given(words)
def test_word_times_inverse_is_empty(w):
    assert w * w.inverse() == Word()
    assert w.inverse() * w == Word()


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert r.is_reduced()
    assert free_reduce(r) == r


@given(st.lists(words.filter(bool).map(free_reduce).filter(bool), max_size=4))
@settings(max_examples=60)
def test_serialize_roundtrip(rels):
    p = Presentation(("x1", "x2", "x3", "x4"), tuple(rels), name="rt", alpha=(1, 0, 0, 0))
    q = parse_presentation(p.serialize())
    assert q == p
    assert q.alpha == p.alpha


def test_abelianization_accepts_knot_weights():
    p = parse_presentation(FIG8)
    assert validate_abelianization(p, AbelianizationMap((1, 1, 1, 1)))


def test_abelianization_commutator():
    p = parse_presentation("<x1, x2 | x1 x2 x1^-1 x2^-1>")
    assert validate_abelianization(p, AbelianizationMap((1, 0)))


def test_abelianization_rejects_with_witness():
    p = parse_presentation(FIG8)
    res = validate_abelianization(p, AbelianizationMap((1, 2, 1, 1)))
    assert not res
    assert res.relator == 1 and res.degree == 1


def test_abelianization_rejects_non_surjective():
    p = parse_presentation("<x1, x2 | x1 x2 x1^-1 x2^-1>")
    res = validate_abelianization(p, AbelianizationMap((2, 4)))
    assert not res and res.weight_gcd == 2


def test_abelianization_length_mismatch():
    with pytest.raises(ValueError):
        validate_abelianization(parse_presentation(FIG8), AbelianizationMap((1, 1)))


def test_bundled_table():
    assert set(bundled_knots()) == {"unknot", "3_1", "4_1", "8_18", "8_21", "9_12", "9_24", "9_37", "9_39", "9_40"}


@pytest.mark.parametrize("name", bundled_knots())
def test_bundled_knots_are_deficiency_one_with_meridian_weights(name):
    p = load_presentation(name)
    assert p.name == name
    assert p.nrels == p.ngens - 1
    assert validate_abelianization(p, AbelianizationMap.ones(p.ngens))


def test_bundled_figure_eight_matches_literal():
    a, b = load_presentation("4_1"), parse_presentation(FIG8)
    assert (a.generator_names, a.relators) == (b.generator_names, b.relators)


def test_load_by_path_and_name(tmp_path):
    f = tmp_path / "z2.pres"
    f.write_text("<a, b | a b a^-1 b^-1>\n")
    assert load_presentation(f).ngens == 2
    assert load_presentation("4_1.pres").ngens == 4
    with pytest.raises(FileNotFoundError):
        load_presentation("no_such_knot")


def test_parse_word():
    assert parse_word("x1 x4 x1^-1", ["x1", "x2", "x3", "x4"]) == Word([1, 4, -1])
    assert parse_word("1", ["x1"]) == Word()
