"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from efunc import catalog
from efunc.exactmath import QQ
from efunc.ratfun import Poly

SQRT2 = catalog.QSqrt2()
QI = catalog.QI()
CUBIC = catalog.field_from_minpoly("x^3 - 3*x + 1")  # cyclic cubic, Galois
FIELDS = [QQ, SQRT2, QI, CUBIC]

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


def elements(field, coords=small_rationals):
    return st.lists(coords, min_size=field.degree, max_size=field.degree).map(field.element)


def integral_elements(field):
    return elements(field, small_ints)


def nonzero_elements(field):
    return elements(field).filter(lambda a: not a.is_zero())


def field_and_elements(n, integral=False):
    """A field followed by ``n`` elements of it."""
    def build(field):
        e = integral_elements(field) if integral else elements(field)
        return st.tuples(st.just(field), *[e] * n)
    return st.sampled_from(FIELDS).flatmap(build)


def polys(field=QQ, max_deg=4, coords=small_ints):
    return st.lists(elements(field, coords), min_size=0, max_size=max_deg + 1).map(lambda cs: Poly(field, cs))


def nonzero_polys(field=QQ, max_deg=4, coords=small_ints):
    return polys(field, max_deg, coords).filter(lambda p: not p.is_zero())


def rational_streams(max_len=8):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=max_len)


__all__ = ["CUBIC", "FIELDS", "QI", "SQRT2", "Fraction", "elements", "field_and_elements",
           "integral_elements", "nonzero_elements", "nonzero_polys", "polys", "rational_streams",
           "small_ints", "small_rationals"]
