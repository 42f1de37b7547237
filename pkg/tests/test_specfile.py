import os

import pytest
from hypothesis import given, strategies as st

from efunc import catalog
from efunc.errors import ParseError, UsageError
from efunc.specfile import Spec, load_spec, parse_spec, resolve_spec, spec_for

import oracles
from strategies import SQRT2

DATA = os.path.join(os.path.dirname(__file__), "data")

J0_TEXT = """
# J0 and its derivative
[system]
0 | 1
-1 | -1/z

[seeds]
0 = 1 0 -1/4
names = J0, J0'
"""


def stream(f, n):
    return [f.coeff(k) for k in range(n)]


def test_parse_j0():
    s = parse_spec(J0_TEXT)
    F = s.evector()
    assert F.dim == 2 and list(F.names) == ["J0", "J0'"]
    assert [a.to_rational() for a in s.efunction().coeffs(40)] == oracles.j0_stream(40)


def test_parse_field_section():
    s = load_spec(os.path.join(DATA, "z2m2_exp.efun"))
    assert s.field.degree == 2 and s.field.is_galois
    assert s.field == SQRT2


def test_generator_section():
    s = parse_spec("[generator]\nname = apq 2 2\n")
    assert [a.to_rational() for a in s.efunction().coeffs(5)] == oracles.apq_stream(2, 2, 5)


@pytest.mark.parametrize("text", [
    "[system]\n1 | 2\n[seeds]\n0 = 1\n",        # not square
    "[bogus]\nx = 1\n",
    "[system]\nz +* 1\n[seeds]\n0 = 1\n",
    "[system]\n1\n[seeds]\n0 = one\n",
])
def test_malformed_specs(text):
    with pytest.raises((ParseError, UsageError)):
        parse_spec(text).efunction()


def test_component_out_of_range():
    s = parse_spec(J0_TEXT + "component = 5\n")
    with pytest.raises(UsageError):
        s.efunction()


@pytest.mark.parametrize("name", ["zm1_exp.efun", "z2m2_exp.efun", "one_plus_zm1_exp.efun"])
def test_round_trip_data_files(name):
    s = load_spec(os.path.join(DATA, name))
    c = s.canonical()
    again = parse_spec(c.to_text())
    assert again.to_text() == c.to_text()
    assert stream(again.efunction(), 30) == stream(s.efunction(), 30)


@given(st.sampled_from(["exp", "bessel-j0", "cos", "sin", "apq 2 2", "apq 1 1"]))
def test_spec_for_catalog(name):
    f = catalog.resolve(name)
    s = spec_for(f)
    assert isinstance(s, Spec)
    g = parse_spec(s.to_text()).efunction()
    assert stream(g, 25) == stream(f, 25)


def test_resolve_spec_paths_and_names(tmp_path):
    p = tmp_path / "j0.efun"
    p.write_text(J0_TEXT)
    assert stream(resolve_spec(str(p)), 20) == stream(catalog.bessel_j0(), 20)
    assert stream(resolve_spec("exp"), 10) == stream(catalog.exp(), 10)
