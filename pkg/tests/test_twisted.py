import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistedalex.group_ring import GroupRingElem, fox_derivative
from twistedalex.polymatrix import PolyMatrix
from twistedalex.polys import CoeffRing, LaurentPoly, canonicalize, unit_equivalent
from twistedalex.presentations import AbelianizationMap, Word, bundled_path, free_reduce, load_presentation, parse_presentation
from twistedalex.twisted import (
    NoInvertibleColumn,
    Representation,
    RepresentationError,
    alexander_matrix,
    choose_column,
    classical_alexander,
    format_representation,
    generator_denominator,
    load_representation,
    parse_representation,
    phi_block,
    trivial_representation,
    twisted_alexander,
)

F7 = CoeffRing.prime_field(7)
ZZ = CoeffRing.integers()
P = LaurentPoly.parse(F7, "1 + t + 3*t^2 + t^3 + t^4")

PRINTED = [
    ["6", "0", "2*t", "4*t", "0", "0", "6*t + 1", "6*t"],
    ["0", "6", "5*t", "0", "0", "0", "0", "6*t + 1"],
    ["3*t + 1", "3*t", "t", "t", "6", "0", "0", "0"],
    ["4*t", "2*t + 1", "0", "t", "0", "6", "0", "0"],
    ["0", "0", "3*t + 1", "3*t", "6", "0", "t", "0"],
    ["0", "0", "4*t", "2*t + 1", "0", "6", "3*t", "t"],
]


@pytest.fixture(scope="module")
def fig8():
    rep, pres = load_representation(bundled_path("4_1_rho.rep"))
    return pres, rep


def W(*letters):
    return GroupRingElem.word(Word(letters))


def test_phi_blocks(fig8):
    pres, rep = fig8
    a = AbelianizationMap.ones(4)
    # d r1 / d x1 = -x4 x2 x4^-1 x1^-1
    assert phi_block(fox_derivative(pres.relators[0], 1), rep, a) == PolyMatrix.from_rows(F7, [[6, 0], [0, 6]])
    assert phi_block(W(1, 2), rep, a) == PolyMatrix.from_rows(F7, [["4*t^2", "t^2"], ["3*t^2", "t^2"]])
    assert phi_block(fox_derivative(pres.relators[0], 2), rep, a) == PolyMatrix.from_rows(
        F7, [["2*t", "4*t"], ["5*t", "0"]])


def test_alexander_matrix_matches_printed(fig8):
    pres, rep = fig8
    assert alexander_matrix(pres, rep, AbelianizationMap.ones(4)) == PolyMatrix.from_rows(F7, PRINTED)


def test_numerator_column_four(fig8):
    pres, rep = fig8
    res = twisted_alexander(pres, rep, j=4)
    assert unit_equivalent(res.numerator, P)
    assert res.denominator == LaurentPoly.parse(F7, "1 + 5*t + t^2")
    assert res.column_used == 4 and not res.deficient


def test_default_column_and_denominators(fig8):
    pres, rep = fig8
    a = AbelianizationMap.ones(4)
    assert choose_column(pres, rep, a) == 1
    for j in range(1, 5):
        assert unit_equivalent(generator_denominator(pres, rep, a, j), LaurentPoly.parse(F7, "t^2 + 5*t + 1"))


def test_unknot_trivial():
    pres = load_presentation("unknot")
    res = twisted_alexander(pres, trivial_representation(ZZ, 1))
    assert res.numerator == 1
    assert res.denominator == LaurentPoly.parse(ZZ, "-1 + t")


def test_integers_presentation_is_one_over_t_minus_one():
    pres = parse_presentation("<x1 | >")
    res = twisted_alexander(pres, trivial_representation(F7, 1, dim=2))
    assert res.numerator == 1
    assert unit_equivalent(res.denominator, LaurentPoly.parse(F7, "1 - 2*t + t^2"))


def test_choose_column_skips_degenerate_generator():
    z2 = parse_presentation("<x1, x2 | x1 x2 x1^-1 x2^-1>")
    rep = trivial_representation(ZZ, 2)
    assert choose_column(z2, rep, AbelianizationMap((1, 0))) == 1
    assert choose_column(z2, rep, AbelianizationMap((0, 1))) == 2
    with pytest.raises(NoInvertibleColumn):
        choose_column(z2, rep, AbelianizationMap((0, 0)))
    with pytest.raises(NoInvertibleColumn):
        twisted_alexander(z2, rep, AbelianizationMap((0, 1)), j=1)


def test_deficient_presentation_has_zero_numerator():
    free = parse_presentation("<x1, x2, x3 | x1 x2 x1^-1 x2^-1>")
    res = twisted_alexander(free, trivial_representation(ZZ, 3), AbelianizationMap((1, 0, 0)))
    assert res.deficient and res.numerator == 0


def test_bad_inputs(fig8):
    pres, rep = fig8
    with pytest.raises(ValueError):
        twisted_alexander(pres, rep, AbelianizationMap((1, 2, 1, 1)))
    with pytest.raises(IndexError):
        twisted_alexander(pres, rep, j=5)
    bad = Representation(F7, [[[1, 1], [0, 1]]] + [[[1, 0], [0, 1]]] * 3)
    with pytest.raises(RepresentationError):
        twisted_alexander(pres, bad)
    with pytest.raises(RepresentationError):
        Representation(F7, [[[1, 2], [2, 4]]])
    with pytest.raises(RepresentationError):
        Representation(F7, [[[2, 0], [0, 1]]], special_linear=True)


CLASSICAL = {
    "unknot": "1",
    "3_1": "1 - t + t^2",
    "4_1": "1 - 3*t + t^2",
    "8_18": "1 - 5*t + 10*t^2 - 13*t^3 + 10*t^4 - 5*t^5 + t^6",
    "8_21": "1 - 4*t + 5*t^2 - 4*t^3 + t^4",
    "9_12": "2 - 9*t + 13*t^2 - 9*t^3 + 2*t^4",
    "9_24": "1 - 5*t + 10*t^2 - 13*t^3 + 10*t^4 - 5*t^5 + t^6",
    "9_37": "2 - 11*t + 19*t^2 - 11*t^3 + 2*t^4",
    "9_39": "3 - 14*t + 21*t^2 - 14*t^3 + 3*t^4",
    "9_40": "1 - 7*t + 18*t^2 - 23*t^3 + 18*t^4 - 7*t^5 + t^6",
}


@pytest.mark.parametrize("name", sorted(CLASSICAL))
def test_classical_table(name):
    assert unit_equivalent(classical_alexander(load_presentation(name)), LaurentPoly.parse(ZZ, CLASSICAL[name]))


def test_rep_file_roundtrip(fig8, tmp_path):
    pres, rep = fig8
    text = format_representation(rep, pres)
    again, _ = parse_representation(text)
    assert again == rep
    f = tmp_path / "r.rep"
    f.write_text(text)
    assert load_representation(f)[0] == rep


def test_rep_file_errors(fig8):
    pres, _ = fig8
    with pytest.raises(RepresentationError, match="no image"):
        parse_representation("prime: 7\nx1: 1 0; 0 1\n", pres)
    with pytest.raises(RepresentationError, match="integers"):
        parse_representation("prime: 7\nx1: a 0; 0 1\n", pres)


# -- randomized structural identities ----------------------------------------

NG = 3
letters = st.integers(1, NG).flatmap(lambda g: st.sampled_from([g, -g]))
words = st.lists(letters, max_size=8).map(free_reduce)
elems = st.lists(st.tuples(words, st.integers(-3, 3)), max_size=3).map(GroupRingElem)


def random_gl(rng, p, n=2):
    while True:
        m = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p:
            return m


@given(elems, elems, st.integers(0, 10**6), st.tuples(*[st.integers(-2, 2)] * NG))
@settings(max_examples=120, deadline=None)
def test_phi_is_ring_homomorphism(a, b, seed, weights):
    rng = random.Random(seed)
    rep = Representation(F7, [random_gl(rng, 7) for _ in range(NG)])
    alpha = AbelianizationMap(weights)
    assert phi_block(a * b, rep, alpha) == phi_block(a, rep, alpha) @ phi_block(b, rep, alpha)
    assert phi_block(a + b, rep, alpha) == phi_block(a, rep, alpha) + phi_block(b, rep, alpha)


def test_rows_annihilate_generator_column(fig8):
    # sum_j Phi(d r / d x_j) Phi(x_j - 1) = Phi(r - 1) = 0
    pres, rep = fig8
    a = AbelianizationMap.ones(4)
    m = alexander_matrix(pres, rep, a)
    blocks = [phi_block(W(j) - GroupRingElem.one(), rep, a) for j in range(1, 5)]
    col = PolyMatrix(F7, 8, 2, [e for b in blocks for e in b.entries])
    assert m @ col == PolyMatrix.zeros(F7, 6, 2)


def _fraction_invariant(pres, rep):
    vals = []
    a = pres.abelianization()
    for j in range(1, pres.ngens + 1):
        if generator_denominator(pres, rep, a, j):
            r = twisted_alexander(pres, rep, a, j=j, check=False)
            vals.append((r.numerator, r.denominator))
    for (n1, d1), (n2, d2) in zip(vals, vals[1:]):
        assert unit_equivalent(n1 * d2, n2 * d1)
    return len(vals)


def test_column_choice_fraction_invariance(fig8):
    pres, rep = fig8
    assert _fraction_invariant(pres, rep) == 4
