import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistedalex import polymatrix
from twistedalex.polymatrix import (
    MinorExplosionError,
    PolyMatrix,
    det_bareiss,
    det_cofactor,
    det_polymatrix,
    gcd_of_maximal_minors,
)
from twistedalex.polys import CoeffRing, LaurentPoly, canonicalize, unit_equivalent

F7 = CoeffRing.prime_field(7)
ZZ = CoeffRing.integers()
P = LaurentPoly.parse(F7, "1 + t + 3*t^2 + t^3 + t^4")

M4 = PolyMatrix.from_rows(F7, [
    ["6", "0", "2*t", "4*t", "0", "0"],
    ["0", "6", "5*t", "0", "0", "0"],
    ["3*t + 1", "3*t", "t", "t", "6", "0"],
    ["4*t", "2*t + 1", "0", "t", "0", "6"],
    ["0", "0", "3*t + 1", "3*t", "6", "0"],
    ["0", "0", "4*t", "2*t + 1", "0", "6"],
])

_t = sympy.Symbol("t")


def oracle_det(m: PolyMatrix) -> LaurentPoly:
    """Symbolic determinant from sympy, shifted back and reduced into m.ring."""
    low = min((e.val for e in m.entries if e), default=0)
    rows = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            e = m[i, j]
            row.append(sum(int(c) * _t ** (e.val - low + k) for k, c in enumerate(e.coeffs)))
        rows.append(row)
    d = sympy.Poly(sympy.Matrix(rows).det(method="berkowitz"), _t)
    coeffs = {}
    for (k,), c in d.terms():
        coeffs[k + low * m.rows] = int(c)
    return LaurentPoly.from_dict(m.ring, coeffs)


def poly(ring, lo=-2, hi=2):
    return st.tuples(st.integers(lo, hi), st.lists(st.integers(-4, 4), max_size=3)).map(
        lambda v: LaurentPoly(ring, v[1], v[0]))


def square(ring, nmin=1, nmax=5):
    return st.integers(nmin, nmax).flatmap(
        lambda n: st.lists(poly(ring), min_size=n * n, max_size=n * n).map(lambda e: PolyMatrix(ring, n, n, e)))


def test_det_diag():
    m = PolyMatrix.from_rows(F7, [["t", 0], [0, "t"]])
    assert det_polymatrix(m) == LaurentPoly.parse(F7, "t^2")


def test_det_small_block():
    m = PolyMatrix.from_rows(F7, [["2*t - 1", "4*t"], ["5*t", "-1"]])
    assert unit_equivalent(det_polymatrix(m), LaurentPoly.parse(F7, "t^2 + 5*t + 1"))


def test_det_figure_eight_minor():
    assert unit_equivalent(det_bareiss(M4), P)
    assert unit_equivalent(det_cofactor(M4), P)


def test_det_empty_and_nonsquare():
    assert det_polymatrix(PolyMatrix.zeros(F7, 0, 0)) == 1
    with pytest.raises(ValueError):
        det_polymatrix(PolyMatrix.zeros(F7, 2, 3))


def test_det_singular():
    m = PolyMatrix.from_rows(F7, [["t", "t^2"], ["1", "t"]])
    assert det_bareiss(m) == 0 and det_cofactor(m) == 0


@given(square(F7))
@settings(max_examples=120, deadline=None)
def test_bareiss_matches_cofactor_fp(m):
    assert det_bareiss(m) == det_cofactor(m)


@given(square(ZZ, 1, 4))
@settings(max_examples=120, deadline=None)
def test_bareiss_matches_cofactor_integers(m):
    assert det_bareiss(m) == det_cofactor(m)


@given(square(F7, 1, 5))
@settings(max_examples=60, deadline=None)
def test_bareiss_matches_symbolic_oracle(m):
    assert det_bareiss(m) == oracle_det(m)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(poly(F7), min_size=n * n, max_size=n * n),
    st.lists(poly(F7), min_size=n * n, max_size=n * n),
    st.just(n))))
@settings(max_examples=60, deadline=None)
def test_det_multiplicative(v):
    a_e, b_e, n = v
    a, b = PolyMatrix(F7, n, n, a_e), PolyMatrix(F7, n, n, b_e)
    assert det_polymatrix(a @ b) == det_polymatrix(a) * det_polymatrix(b)


def test_minor_gcd_column():
    m = PolyMatrix.from_rows(ZZ, [["t - 1"], ["t^2 - 1"]])
    assert gcd_of_maximal_minors(m, 1) == LaurentPoly.parse(ZZ, "-1 + t")


def test_minor_gcd_stacked():
    stacked = PolyMatrix(F7, 12, 6, M4.entries + M4.entries)
    assert gcd_of_maximal_minors(stacked, 6) == canonicalize(P)


def test_minor_gcd_zero_matrix():
    assert gcd_of_maximal_minors(PolyMatrix.zeros(F7, 3, 2), 2) == 0


def test_minor_gcd_shape_errors():
    with pytest.raises(ValueError):
        gcd_of_maximal_minors(PolyMatrix.zeros(F7, 1, 2), 2)
    with pytest.raises(ValueError):
        gcd_of_maximal_minors(PolyMatrix.zeros(F7, 3, 2), 3)


def test_minor_explosion_guard(monkeypatch):
    monkeypatch.setattr(polymatrix, "MAX_MINORS", 10)
    m = PolyMatrix.identity(F7, 3)
    tall = PolyMatrix(F7, 6, 3, m.entries + m.entries)
    with pytest.raises(MinorExplosionError):
        gcd_of_maximal_minors(tall, 3)


def test_matrix_arithmetic():
    i2 = PolyMatrix.identity(F7, 2)
    a = PolyMatrix.from_rows(F7, [["t", 1], [0, "t^-1"]])
    assert a @ i2 == a
    assert (a - a) == PolyMatrix.zeros(F7, 2, 2)
    assert a.delete_columns([0]).shape == (2, 1)
    with pytest.raises(ValueError):
        PolyMatrix.from_rows(F7, [[1, 2], [3]])
