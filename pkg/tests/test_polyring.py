import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lgvx.lattices import weighted_delannoy_rec, weighted_schroder
from lgvx.polyring import (InexactDivision, PolyMatrix, PolySyntaxError, VariableMismatch, WeightPoly,
                           det, format_poly, int_matrix, parse_poly)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, variables=XY):
    return parse_poly(text, variables)


# -- examples ----------------------------------------------------------------------


def test_addition_examples():
    assert P("x + y") + P("-y") == P("x")
    p = P("3*x^2*y - 7")
    assert WeightPoly.zero(XY) + p == p
    assert P("2*x*y") + P("3*x*y") == P("5*x*y")


def test_cancellation_leaves_no_zero_terms():
    s = P("x + y") + P("-x - y")
    assert s.is_zero()
    assert s.terms == {}


def test_multiplication_examples():
    assert P("x") * P("y^3") == P("x*y^3")
    p = P("2*x - y + 4")
    assert p * WeightPoly.one(XY) == p
    assert P("x + y") ** 2 == P("x^2 + 2*x*y + y^2")


def test_evaluation_examples():
    assert P("x*y^3").evaluate({"x": 1, "y": 1}) == 1
    assert P("40*x^5*y^5").evaluate({"x": 1, "y": 1}) == 40
    assert weighted_schroder(2).evaluate({"x": 1, "y": 1, "z": 1}) == 6


def test_evaluation_requires_every_variable():
    with pytest.raises(VariableMismatch):
        P("x*y").evaluate({"x": 2})


def test_variable_mismatch_is_an_error():
    with pytest.raises(VariableMismatch):
        P("x") + parse_poly("x", ("x", "z"))
    with pytest.raises(VariableMismatch):
        P("x") * parse_poly("x", ("x",))


def test_big_integer_coefficients_are_exact():
    p = P("x") * (2 ** 200) + 1
    assert (p * p).evaluate({"x": 1, "y": 0}) == (2 ** 200 + 1) ** 2


def test_det_of_signed_example_matrix():
    m = PolyMatrix(((P("-4*x*y^3"), P("13*x^2*y^4")), (P("4*x^3*y"), P("-3*x^4*y^2"))))
    assert det(m) == P("-40*x^5*y^5")


def test_det_identity_is_one():
    one, zero = WeightPoly.one(XY), WeightPoly.zero(XY)
    m = PolyMatrix(tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3)))
    assert det(m) == 1


def test_det_of_central_delannoy_hankel_block():
    ones = {"x": 1, "y": 1, "z": 1}
    d = [weighted_delannoy_rec(k, k).evaluate(ones) for k in range(3)]
    assert d == [1, 3, 13]
    assert det(int_matrix([[d[0], d[1]], [d[1], d[2]]])) == 4


def test_empty_determinant_is_one():
    assert det(PolyMatrix(()), variables=XY) == WeightPoly.one(XY)


def test_non_square_matrix_rejected():
    with pytest.raises(ValueError):
        PolyMatrix(((P("x"), P("y")),))


def test_exact_division_and_remainder():
    a = P("x^2 - y^2")
    assert a.exact_div(P("x - y")) == P("x + y")
    with pytest.raises(InexactDivision):
        P("x^2 + 1").exact_div(P("x - y"))


# -- text syntax ---------------------------------------------------------------------


@pytest.mark.parametrize("text", ["1", "x", "-3*x^4*y^2", "13*x^2*y^4 + x", "0", "x*y - 5"])
def test_canonical_text_round_trips(text):
    assert format_poly(P(text)) == text


def test_canonical_order_is_descending_lex():
    assert str(P("1 + y + x + x*y + x^2")) == "x^2 + x*y + x + y + 1"


def test_whitespace_and_repeated_factors():
    assert P(" 2 * x * x ^2*y ") == P("2*x^3*y")


@pytest.mark.parametrize("bad,col", [("x +", 4), ("2**x", 3), ("x^y", 2), ("w", 1), ("x $ y", 3), ("", 1)])
def test_syntax_errors_report_column(bad, col):
    with pytest.raises(PolySyntaxError) as info:
        P(bad)
    assert info.value.column == col


# -- properties ----------------------------------------------------------------------


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-50, 50),
    max_size=5,
)
polys = terms.map(lambda t: WeightPoly(XY, t))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    zero = WeightPoly.zero(XY)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == zero
    assert (a - b) + b == a


@given(polys)
def test_no_stored_zero_coefficients(a):
    assert all(c != 0 for c in (a * a - a).terms.values())


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation_is_a_ring_map(a, x, y):
    b = a * a + 3
    env = {"x": x, "y": y}
    assert b.evaluate(env) == a.evaluate(env) ** 2 + 3


@given(polys)
def test_text_round_trip(a):
    assert P(str(a)) == a


poly_rows = st.lists(polys, min_size=3, max_size=3)
matrices3 = st.lists(poly_rows, min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(matrices3, st.sampled_from([(0, 1), (0, 2), (1, 2)]))
def test_row_swap_negates_det(rows, pair):
    m = PolyMatrix(tuple(map(tuple, rows)))
    assert det(m.swap_rows(*pair)) == -det(m)


@settings(max_examples=40, deadline=None)
@given(matrices3, poly_rows, polys)
def test_det_is_linear_in_each_row(rows, other, scale):
    base = [list(r) for r in rows]
    combined = [r[:] for r in base]
    combined[1] = [a * scale + b for a, b in zip(base[1], other)]
    replaced = [r[:] for r in base]
    replaced[1] = list(other)
    as_m = lambda rs: PolyMatrix(tuple(map(tuple, rs)))
    assert det(as_m(combined)) == scale * det(as_m(base)) + det(as_m(replaced))


@settings(max_examples=40, deadline=None)
@given(matrices3)
def test_repeated_row_gives_zero(rows):
    rows = [rows[0], rows[1], rows[0]]
    assert det(PolyMatrix(tuple(map(tuple, rows)))).is_zero()


def _fraction_det(rows):
    a = [[Fraction(v) for v in r] for r in rows]
    n, sign, out = len(a), 1, Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return sign * out


def test_cofactor_and_bareiss_agree_on_integer_matrices():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if rng.random() < 0.2:
            rows[-1] = rows[0][:]
        m = int_matrix(rows)
        a, b = det(m, method="cofactor"), det(m, method="bareiss")
        assert a == b
        assert a == int(_fraction_det(rows))


def test_cofactor_and_bareiss_agree_on_polynomial_matrices():
    rng = random.Random(11)
    pool = [P(s) for s in ("x", "y", "x + y", "2", "x*y - 1", "0", "y^2", "-x")]
    for _ in range(40):
        n = rng.randint(1, 5)
        m = PolyMatrix(tuple(tuple(rng.choice(pool) for _ in range(n)) for _ in range(n)))
        assert det(m, method="cofactor") == det(m, method="bareiss")


def test_permutation_expansion_matches_det():
    rng = random.Random(3)
    pool = [P(s) for s in ("x", "y", "x + 1", "3", "-y", "x*y")]
    for _ in range(10):
        m = [[rng.choice(pool) for _ in range(4)] for _ in range(4)]
        total = WeightPoly.zero(XY)
        for perm in itertools.permutations(range(4)):
            inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
            term = WeightPoly.one(XY)
            for i in range(4):
                term = term * m[i][perm[i]]
            total = total - term if inv % 2 else total + term
        assert det(PolyMatrix(tuple(map(tuple, m)))) == total
