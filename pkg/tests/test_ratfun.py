from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from efunc.errors import DivisionByZeroPolynomial, NotCoprime, ParseError
from efunc.exactmath import QQ
from efunc.exprparse import parse_element, parse_poly, parse_ratfun
from efunc.ratfun import Poly, RatFun, RatMatrix, poly_gcd, poly_gcd_ext, pole_order, unimodular_complete

from strategies import SQRT2, nonzero_polys, polys

z = Poly.z(QQ)


def P(*cs, field=QQ):
    return Poly(field, cs)


# -- gcd --------------------------------------------------------------------

def test_gcd_common_factor():
    g, u, v = poly_gcd_ext(z * z - 1, z - 1)
    assert g == z - 1
    assert u * (z * z - 1) + v * (z - 1) == g


def test_gcd_ext_coprime_linear():
    g, u, v = poly_gcd_ext(z - 1, z - 2)
    assert g == 1
    # by hand: (z - 1) - (z - 2) = 1
    assert (u, v) == (P(1), P(-1))


def test_gcd_with_zero():
    a = P(4, 0, 2)
    g, u, v = poly_gcd_ext(a, Poly(QQ))
    assert g == a * Fraction(1, 2) and g.is_monic()
    assert poly_gcd_ext(Poly(QQ), Poly(QQ))[0].is_zero()


# -- pole order -----------------------------------------------------------------

def test_pole_orders():
    one = QQ.one
    assert pole_order(RatFun(P(1), (z - 1) ** 2), one) == 2
    assert pole_order(RatFun(z + 3), one) == 0
    assert pole_order(RatFun(z - 1, (z - 1) * (z - 2)), one) == 0


def test_pole_order_over_sqrt2():
    t = SQRT2.gen
    r = parse_ratfun("1/(z^2 - 2)^3", SQRT2)
    assert r.pole_order(t) == 3 and r.pole_order(-t) == 3 and r.pole_order(SQRT2.one) == 0


# -- unimodular completion ---------------------------------------------------------

def test_complete_trivial_row():
    M = unimodular_complete([P(1)])
    assert M.shape == (1, 1) and M.det() == 1


def test_complete_two_entries():
    M = unimodular_complete([z, z - 1])
    assert [[e.num for e in row] for row in M.entries] == [[z, z - 1], [P(1), P(1)]]
    assert M.det() == 1


def test_complete_not_coprime():
    with pytest.raises(NotCoprime):
        unimodular_complete([z, z])
    with pytest.raises(NotCoprime):
        unimodular_complete([P(2)])


def test_complete_with_zero_head():
    M = unimodular_complete([Poly(QQ), Poly(QQ), P(3)])
    assert M.det() == 1 and M.is_polynomial()


# -- parser -------------------------------------------------------------------

def test_parse_examples():
    r = parse_ratfun("-1 - 1/z", QQ)
    assert r.num == P(-1, -1) and r.den == z
    r = parse_ratfun("z/(z-1)", QQ)
    assert r.pole_order(QQ.one) == 1
    r = parse_ratfun("t*z^2/2", SQRT2)
    assert r.is_polynomial() and r.num == Poly(SQRT2, [0, 0, SQRT2.gen / 2])


def test_parse_decimals_and_powers():
    assert parse_poly("0.5*z^2 + z**2", QQ) == P(0, 0, Fraction(3, 2))
    assert parse_ratfun("z^-2", QQ) == RatFun(P(1), z * z)
    assert parse_element("(1 + t)^2", SQRT2) == SQRT2.element([3, 2])
    assert parse_element("[1, -1/2]", SQRT2) == SQRT2.element([1, Fraction(-1, 2)])


@pytest.mark.parametrize("text,pos", [("z+*2", 2), ("(z", 2), ("z^x", 2), ("2 $ z", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as ei:
        parse_ratfun(text, QQ)
    assert ei.value.position == pos


@pytest.mark.parametrize("text", ["z/0", "1/(z - z)"])
def test_parse_division_by_zero(text):
    with pytest.raises(DivisionByZeroPolynomial):
        parse_ratfun(text, QQ)


def test_parse_element_rejects_z():
    with pytest.raises(ParseError):
        parse_element("1 + z", SQRT2)


# -- matrices ------------------------------------------------------------------

def test_matrix_inverse_and_det():
    M = RatMatrix(QQ, [[RatFun(z), RatFun(P(1))], [RatFun(P(1), z - 1), RatFun(P(2))]])
    I = M * M.inverse()
    assert all(I.entries[i][j] == (1 if i == j else 0) for i in range(2) for j in range(2))
    assert M.det() == RatFun(2 * z, P(1)) - RatFun(P(1), z - 1)


# -- properties -------------------------------------------------------------------

ratfuns = st.tuples(polys(QQ, 3), nonzero_polys(QQ, 3)).map(lambda nd: RatFun(*nd))
ratfuns_k = st.tuples(polys(SQRT2, 2), nonzero_polys(SQRT2, 2)).map(lambda nd: RatFun(*nd))


def canonical(r):
    return r.den.is_monic() and (r.num.is_zero() and r.den == 1 or poly_gcd(r.num, r.den) == 1)


@given(st.one_of(st.tuples(ratfuns, ratfuns), st.tuples(ratfuns_k, ratfuns_k)))
def test_ratfun_ops_stay_reduced(pair):
    a, b = pair
    results = [a + b, a - b, a * b, a.derivative()]
    if not b.is_zero():
        results.append(a / b)
    assert all(canonical(r) for r in results)
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a / b) * b == a


@given(nonzero_polys(QQ, 5), polys(QQ, 5))
def test_bezout_identity(a, b):
    g, u, v = poly_gcd_ext(a, b)
    assert u * a + v * b == g
    assert g.is_monic()
    assert not (a % g) and (b.is_zero() or not (b % g))


@st.composite
def coprime_rows(draw):
    N = draw(st.integers(1, 5))
    if N == 1:
        return [P(1)]
    row = draw(st.lists(polys(QQ, 4), min_size=N, max_size=N))
    g = Poly(QQ)
    for p in row:
        g = poly_gcd(g, p)
    assume(not g.is_zero())
    return [p // g for p in row]


@given(coprime_rows())
def test_unimodular_det_one(row):
    M = unimodular_complete(row)
    assert M.is_polynomial()
    assert [e.num for e in M.entries[0]] == row
    assert M.det() == 1


@given(ratfuns_k)
def test_print_parse_round_trip(r):
    assert parse_ratfun(r.to_expr(), SQRT2) == r
    assert parse_ratfun(r.to_expr(), SQRT2).to_expr() == r.to_expr()
