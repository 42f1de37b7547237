from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from efunc.balls import ComplexBall
from efunc.errors import AutomorphismInvalid, DivisionByZero, NotGalois, NotSquarefree
from efunc.exactmath import (
    QQ,
    NumberField,
    det_fraction,
    is_normal_basis,
    normal_basis_element,
)

import oracles
from strategies import CUBIC, FIELDS, QI, SQRT2, elements, field_and_elements, integral_elements, nonzero_elements


def inside(ball, x, slack=Fraction(0)):
    lo, hi = ball.real_interval()
    return lo - slack <= x <= hi + slack


# -- construction -------------------------------------------------------------

def test_rational_field_is_trivial():
    K = NumberField([-1, 1])
    assert K.degree == 1 and K.is_galois
    assert len(K.automorphisms) == 1 and K.automorphisms[0].is_identity()


def test_sqrt2_roots_match_bisection():
    K = NumberField([-2, 0, 1], automorphisms=[[0, 1], [0, -1]])
    brackets = oracles.isolate_sqrt2_roots(80)
    roots = K.roots(256)
    assert len(roots) == 2
    for (lo, hi), r in zip(brackets, roots):
        assert r.im == 0
        assert r.real_interval()[0] <= hi and lo <= r.real_interval()[1]
    assert not roots[0].overlaps(roots[1])


def test_invalid_automorphism_rejected():
    with pytest.raises(AutomorphismInvalid):
        NumberField([-2, 0, 1], automorphisms=[[0, 1], [1, 1]])


def test_automorphism_set_must_be_a_group():
    with pytest.raises(AutomorphismInvalid):
        NumberField([-2, 0, 1], automorphisms=[[0, -1], [0, -1]])


@pytest.mark.parametrize("minpoly", [[1, -2, 1], [0, 0, 1], [2, 0, 2]])
def test_bad_minpoly(minpoly):
    with pytest.raises(NotSquarefree):
        NumberField(minpoly)


def test_automorphisms_accept_text():
    K = NumberField([-2, 0, 1])
    K.set_automorphisms(["t", "-t"])
    assert K.is_galois and K.automorphisms[1](K.gen) == -K.gen


def test_find_automorphisms_cubic():
    K = NumberField([1, -3, 0, 1])
    auts = K.find_automorphisms()
    assert len(auts) == 3
    images = {a.image.c for a in auts}
    assert all(a.compose(b).image.c in images for a in auts for b in auts)


# -- arithmetic ---------------------------------------------------------------

def test_sqrt2_squared():
    t = SQRT2.gen
    assert t * t == 2


def test_inverse_of_one_plus_sqrt2():
    t = SQRT2.gen
    # (1 + t)(x + y t) = 1 => x + 2y = 1, x + y = 0
    x, y = Fraction(-1), Fraction(1)
    assert (1 + t).inverse() == x + y * t


def test_additive_identity():
    a = SQRT2.element([3, Fraction(-1, 2)])
    assert a + 0 == a and a + SQRT2.zero == a


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        SQRT2.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        QI.gen / 0


# -- conjugates, house, trace ---------------------------------------------------

def test_conjugates_of_one_plus_sqrt2():
    c = (1 + SQRT2.gen).conjugates(128)
    s2 = mpmath.sqrt(2)
    assert abs(float(c[0].re) - float(1 + s2)) < 1e-15
    assert abs(float(c[1].re) - float(1 - s2)) < 1e-15


def test_conjugates_of_rational_and_zero():
    balls = SQRT2.rational(Fraction(5, 3)).conjugates()
    assert len(balls) == 2 and all(b.contains(Fraction(5, 3)) for b in balls)
    assert balls[0].machine() == balls[1].machine()
    assert all(b.is_exact() and b.contains(Fraction(3, 4)) for b in CUBIC.rational(Fraction(3, 4)).conjugates())
    assert all(b.is_exact() and b.contains(0) for b in CUBIC.zero.conjugates())


def test_house_examples():
    h = (1 + SQRT2.gen).house(128)
    lo, hi = oracles.isolate_sqrt2_roots(100)[0]
    assert inside(h, 1 + lo, Fraction(1, 10 ** 25)) and inside(h, 1 + hi, Fraction(1, 10 ** 25))
    assert QQ.rational(-3).house().contains(3)
    assert abs(float(SQRT2.gen.house().re) - 1.4142135623730951) < 1e-15


def test_trace_examples():
    t = SQRT2.gen
    assert t.trace() == 0
    assert (1 + t).trace() == 2
    for K in FIELDS:
        assert K.one.trace() == K.degree


def test_automorphism_examples():
    t = SQRT2.gen
    sigma = SQRT2.automorphisms[1]
    assert sigma(3 + t) == 3 - t
    assert SQRT2.identity()(3 + t) == 3 + t


def test_not_galois():
    K = NumberField([-2, 0, 0, 1])
    with pytest.raises(NotGalois):
        K.identity()
    with pytest.raises(NotGalois):
        normal_basis_element(K)
    # arithmetic, house and trace still work
    assert K.gen ** 3 == 2 and K.gen.trace() == 0


def test_normal_basis_examples():
    a = normal_basis_element(SQRT2)
    assert a == 1 + SQRT2.gen
    M = SQRT2.conjugate_coordinate_matrix(a)
    assert M == [[1, 1], [1, -1]] and det_fraction(M) == -2
    assert normal_basis_element(QQ) == 1
    assert not is_normal_basis(SQRT2.gen)
    c = normal_basis_element(CUBIC)
    assert c.is_integral() and is_normal_basis(c)


def test_text_round_trip():
    for K in FIELDS:
        K2 = NumberField.from_text(K.to_text())
        assert K2 == K
        assert (K2.automorphisms is None) == (K.automorphisms is None)
    a = CUBIC.element([1, Fraction(-2, 7), 3])
    assert CUBIC.element(a.to_text()) == a


# -- properties ---------------------------------------------------------------

@given(field_and_elements(3))
def test_field_laws(args):
    K, a, b, c = args
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(field_and_elements(2))
def test_automorphisms_are_ring_homomorphisms(args):
    K, a, b = args
    for s in K.automorphisms:
        assert s(a * b) == s(a) * s(b)
        assert s(a + b) == s(a) + s(b)


@given(st.sampled_from(FIELDS), st.fractions(max_denominator=50))
def test_automorphisms_fix_rationals(K, q):
    for s in K.automorphisms:
        assert s(K.rational(q)) == q


@pytest.mark.parametrize("K", FIELDS[1:])
def test_automorphism_group_closed(K):
    images = {a.image.c for a in K.automorphisms}
    for a in K.automorphisms:
        for b in K.automorphisms:
            assert a.compose(b).image.c in images


@given(field_and_elements(1))
def test_trace_is_sum_of_conjugates(args):
    K, a = args
    total = ComplexBall(0, 0, 0, 128)
    for b in a.conjugates(128):
        total = total + b
    assert total.contains(a.trace())


@given(field_and_elements(2, integral=True))
def test_house_submultiplicative(args):
    K, a, b = args
    ha, hb, hab = a.house(128), b.house(128), (a * b).house(128)
    assert hab.re - hab.rad <= (ha.re + ha.rad) * (hb.re + hb.rad)


@given(field_and_elements(2))
def test_ball_outward_rounding(args):
    K, a, b = args
    # every conjugate of a*b lies in the product of the conjugate balls, at low precision
    for x, y, z in zip(a.conjugates(64), b.conjugates(64), (a * b).conjugates(256)):
        assert (x.with_prec(40) * y.with_prec(40)).overlaps(z)


@given(st.sampled_from(FIELDS).flatmap(lambda K: nonzero_elements(K)))
def test_inverse_norm(a):
    assert a.norm() * a.inverse().norm() == 1


@given(integral_elements(CUBIC))
def test_integral_charpoly(a):
    assert all(c.denominator == 1 for c in a.charpoly())


@given(elements(SQRT2))
def test_element_text_round_trip(a):
    assert SQRT2.element(a.to_text()) == a
