import os

import pytest
from hypothesis import given, settings, strategies as st

from efunc import catalog
from efunc.desing import (
    decompose,
    desingularize,
    divide_by_poly,
    singularity_relation,
    vanishing_certificate,
    verify_decomposition,
    verify_desing,
)
from efunc.efun import DifferentialSystem, EVector, add, constant, mul_poly
from efunc.errors import CertificateInconsistent, ConstantTermZero, NotASingularity
from efunc.exactmath import QQ
from efunc.ratfun import Poly
from efunc.specfile import load_spec

import oracles
from strategies import SQRT2

DATA = os.path.join(os.path.dirname(__file__), "data")
z = Poly.z(QQ)
T = SQRT2.gen


def rat(f, n):
    return [a.to_rational() for a in f.coeffs(n)]


def stream(f, n):
    return [f.coeff(k) for k in range(n)]


def spec(name):
    return load_spec(os.path.join(DATA, name)).evector()


# -- division ---------------------------------------------------------------

def test_divide_zm1_exp():
    f = mul_poly(catalog.exp(), z - 1)
    assert rat(f, 40) == oracles.stream_times_poly([1] * 40, [-1, 1])
    assert rat(divide_by_poly(f, z - 1), 80) == [1] * 80


def test_divide_over_sqrt2():
    D = Poly(SQRT2, [-2, 0, 1])
    j = catalog.bessel_j0().evector.over(SQRT2).component(0)
    f = mul_poly(j, D)
    assert stream(divide_by_poly(f, D), 60) == stream(j, 60)


def test_divide_constant_term_zero():
    with pytest.raises(ConstantTermZero):
        divide_by_poly(catalog.exp(), z)
    with pytest.raises(ConstantTermZero):
        divide_by_poly(catalog.exp(), Poly(QQ))


@settings(max_examples=30)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1, max_size=4),
       st.sampled_from(["exp", "bessel-j0", "cos", "apq 1 1"]))
def test_divide_inverts_multiply(cs, name):
    D = Poly(QQ, cs)
    if not D.coeff(0):
        D = D + 1
    f = catalog.resolve(name)
    assert stream(divide_by_poly(mul_poly(f, D), D), 30) == stream(f, 30)


# -- vanishing certificates ------------------------------------------------------

def test_vanishing_zm1_exp():
    f = mul_poly(catalog.exp(), z - 1)
    rep = vanishing_certificate(f, 1, 30)
    assert rep.status == "consistent with zero"
    assert rep.entries[0][1].contains(0)
    assert vanishing_certificate(catalog.exp(), 1, 30).status == "nonzero certified"


def test_vanishing_over_sqrt2_checks_both_embeddings():
    f = mul_poly(catalog.exp().evector.over(SQRT2).component(0), Poly(SQRT2, [-T, 1]))
    rep = vanishing_certificate(f, T, 30)
    assert len(rep.entries) == 2
    assert rep.status == "consistent with zero"
    # z - t vanishes at t; its conjugate z + t vanishes at -t
    rep = vanishing_certificate(f, -T, 30)
    assert rep.status == "nonzero certified"


# -- singularity relations ---------------------------------------------------------

def test_relation_scalar_case_is_unit_row():
    F = spec("zm1_exp.efun")
    P, j0 = singularity_relation(F.system, F, 1)
    assert P == [Poly(QQ, [1])] and j0 == 0


def test_relation_not_a_singularity():
    F = spec("zm1_exp.efun")
    with pytest.raises(NotASingularity):
        singularity_relation(F.system, F, 2)
    E = catalog.exp_vector()
    with pytest.raises(NotASingularity):
        singularity_relation(E.system, E, 1)


def test_relation_two_dimensional():
    # ((z - 1) e^z, e^z) with the first row written through a pole at 1
    S = DifferentialSystem.from_rows(QQ, [["z/(z-1)", "0"], ["0", "1"]])
    G = EVector(S, {0: [-1], 1: [1]})
    P, j0 = singularity_relation(S, G, 1)
    assert P == [Poly(QQ, [1]), Poly(QQ)] and j0 == 0
    res = desingularize(S, G, check_independence=False)
    assert verify_desing(G, res, 80)


# -- desingularization ------------------------------------------------------------

def test_desing_without_singularities():
    E = catalog.exp_vector()
    res = desingularize(E.system, E)
    assert res.steps == 0
    assert res.B.entries == E.system.A.entries
    assert res.M.det() == 1


@pytest.mark.parametrize("name,minpoly,steps", [("zm1_exp.efun", [-1, 1], 1), ("z2m2_exp.efun", [-2, 0, 1], 2)])
def test_desing_examples(name, minpoly, steps):
    F = spec(name)
    res = desingularize(F.system, F, order=150)
    assert res.steps == steps
    assert verify_desing(F, res, 150)
    q, r = divmod(res.M.det().num, Poly(F.field, minpoly))
    assert not r and q.degree == 0


def test_desing_result_is_exponential():
    F = spec("zm1_exp.efun")
    res = desingularize(F.system, F)
    assert rat(res.e.component(0), 50) == [1] * 50


# -- decomposition ------------------------------------------------------------------

def test_decompose_without_certificates():
    f = catalog.exp()
    dec = decompose(f)
    assert dec.P.is_zero() and dec.Q == 1
    assert stream(dec.g, 20) == stream(f, 20)


def test_decompose_polynomial():
    p = Poly(QQ, [1, 2, 0, 3])
    f = mul_poly(constant(QQ.one), p)
    dec = decompose(f)
    assert dec.P == p and dec.Q.is_zero()
    assert verify_decomposition(f, dec)


def test_decompose_one_plus_zm1_exp():
    F = spec("one_plus_zm1_exp.efun")
    f = F.component(0)
    dec = decompose(f, [(1, 1)])
    assert dec.P == 1 and dec.Q == z - 1
    assert rat(dec.g, 60) == [1] * 60
    assert verify_decomposition(f, dec)
    assert "non-zero" in dec.flags[0]


def test_decompose_bad_certificate():
    f = spec("one_plus_zm1_exp.efun").component(0)
    with pytest.raises(CertificateInconsistent):
        decompose(f, [(1, 2)])
    with pytest.raises(ConstantTermZero):
        decompose(f, [(0, 0)])


def test_decompose_two_certificates_reduces():
    # f = 1 + z + (z - 1)(z - 2) e^z
    D = Poly(QQ, [2, -3, 1])
    f = add(mul_poly(catalog.exp(), D), mul_poly(constant(QQ.one), Poly(QQ, [1, 1])))
    dec = decompose(f, [(1, 2), (2, 1)])
    assert verify_decomposition(f, dec)
    assert dec.Q == D and dec.P.degree < D.degree
    assert rat(dec.g, 40) == [1] * 40
