"""Built-in E-functions.

Each entry resolves to an :class:`~efunc.efun.EFunction`; system-backed
entries also carry their :class:`~efunc.efun.EVector`.
"""

from fractions import Fraction
from math import comb

from .efun import (
    CoeffBound,
    DifferentialSystem,
    EVector,
    HyperCert,
    efun_explicit,
)
from .errors import UsageError
from .exactmath import QQ, NumberField
from .ratfun import Poly

_FIELDS = {}


def field_from_minpoly(spec):
    """Number field from a minpoly given as an expression in x or a coefficient list.

    Automorphisms are searched for (small height) and installed when found.
    Fields are cached so equal specs share one object.
    """
    if isinstance(spec, (list, tuple)):
        coeffs = tuple(Fraction(c) for c in spec)
    else:
        from .exprparse import parse_poly
        p = parse_poly(spec.replace("x", "z"), QQ)
        coeffs = tuple(c.c[0] for c in p.monic().coeffs)
    field = _FIELDS.get(coeffs)
    if field is None:
        field = QQ if coeffs == (-1, 1) else NumberField(coeffs)
        if field.degree > 1:
            try:
                field.find_automorphisms()
            except Exception:
                pass
        _FIELDS[coeffs] = field
    return field


def QSqrt2():
    return field_from_minpoly([-2, 0, 1])


def QI():
    return field_from_minpoly([1, 0, 1])


def exp_vector():
    S = DifferentialSystem(QQ, [[1]])
    return EVector(S, {0: [1]}, names=["exp"], bounds=[CoeffBound(1)],
                   hypers=[HyperCert(1, Poly(QQ, [1]), Poly(QQ, [1]), {0})])


def exp():
    return exp_vector().component(0)


def bessel_j0_vector():
    """(J0, J0') from z y'' + y' + z y = 0."""
    S = DifferentialSystem.from_rows(QQ, [["0", "1"], ["-1", "-1/z"]])
    hyper = HyperCert(2, Poly(QQ, [-1, -1]), Poly(QQ, [2, 1]), {0})
    return EVector(S, {0: [1, 0, Fraction(-1, 4)]}, names=["J0", "J0'"],
                   bounds=[CoeffBound(1), CoeffBound(1)], hypers=[hyper, None])


def bessel_j0():
    return bessel_j0_vector().component(0)


def trig_vector():
    """(cos, sin) from cos' = -sin, sin' = cos."""
    S = DifferentialSystem.from_rows(QQ, [["0", "-1"], ["1", "0"]])
    minus = Poly(QQ, [-1])
    one = Poly(QQ, [1])
    return EVector(S, {0: [1], 1: [0]}, names=["cos", "sin"],
                   bounds=[CoeffBound(1), CoeffBound(1)],
                   hypers=[HyperCert(2, minus, one, {0}), HyperCert(2, minus, one, {1})])


def cos():
    return trig_vector().component(0)


def sin():
    return trig_vector().component(1)


def exp_scaled_vector(alpha, field=None):
    """e^{alpha z} over ``field`` (alpha an element, rational or text)."""
    field = field or (alpha.field if hasattr(alpha, "field") else QQ)
    if isinstance(alpha, str):
        from .exprparse import parse_element
        alpha = parse_element(alpha, field)
    alpha = field.element(alpha)
    S = DifferentialSystem(field, [[alpha]])
    hyper = None
    if alpha.is_rational():
        hyper = HyperCert(1, Poly(QQ, [alpha.c[0]]), Poly(QQ, [1]), {0})
    return EVector(S, {0: [1]}, names=[f"exp({alpha.to_expr()}z)"],
                   bounds=[CoeffBound(1, 0, alpha.house_upper())], hypers=[hyper])


def exp_scaled(alpha, field=None):
    return exp_scaled_vector(alpha, field).component(0)


def apq_coefficient(p, q, n):
    return sum(comb(n, k) ** p * comb(n + k, n) ** q for k in range(n + 1))


def apq(p, q):
    """sum_n (sum_k C(n,k)^p C(n+k,n)^q) z^n/n! from its explicit generator."""
    f = efun_explicit(lambda n: apq_coefficient(p, q, n), QQ, name=f"A_{p},{q}",
                      bound=CoeffBound(1, 1, 2 ** (p + 2 * q)))
    return f


CATALOG = {
    "exp": "e^z, from f' = f",
    "bessel-j0": "J0(z), from z y'' + y' + z y = 0 as a 2x2 system for (y, y')",
    "apq P Q": "sum_n (sum_k C(n,k)^P C(n+k,n)^Q) z^n/n!, explicit generator",
    "exp-scaled ALPHA [over MINPOLY]": "e^{ALPHA z}; ALPHA is a field element, MINPOLY a polynomial in x",
    "const C [over MINPOLY]": "the constant function C (a field element)",
    "cos": "cos z, first component of the (cos, sin) system",
    "sin": "sin z, second component of the (cos, sin) system",
}


def _split_over(rest):
    if "over" in rest:
        k = rest.index("over")
        return field_from_minpoly(" ".join(rest[k + 1:])), rest[:k]
    return QQ, rest


def resolve(name):
    """Catalog lookup: returns an EFunction (system-backed where possible)."""
    f = _resolve(name)
    f.catalog_name = " ".join(name.split())
    return f


def _resolve(name):
    toks = name.split()
    if not toks:
        raise UsageError("empty catalog name")
    head = toks[0]
    if head == "exp" and len(toks) == 1:
        return exp()
    if head in ("bessel-j0", "j0") and len(toks) == 1:
        return bessel_j0()
    if head == "cos" and len(toks) == 1:
        return cos()
    if head == "sin" and len(toks) == 1:
        return sin()
    if head == "apq" and len(toks) == 3:
        try:
            return apq(int(toks[1]), int(toks[2]))
        except ValueError:
            raise UsageError(f"apq needs two integers, got {name!r}") from None
    if head == "const" and len(toks) >= 2:
        field, rest = _split_over(toks[1:])
        from .exprparse import parse_element
        c = parse_element(" ".join(rest), field)
        S = DifferentialSystem(field, [[0]])
        return EVector(S, {0: [c]}, names=[c.to_expr()], bounds=[CoeffBound(c.house_upper())]).component(0)
    if head == "exp-scaled" and len(toks) >= 2:
        field, rest = _split_over(toks[1:])
        return exp_scaled(" ".join(rest), field)
    raise UsageError(f"unknown catalog entry {name!r}; try one of: {', '.join(CATALOG)}")
