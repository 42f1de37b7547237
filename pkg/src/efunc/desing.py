"""Division by polynomials, removal of non-zero singularities, and f = P + Q g.

All constructions stay inside the ambient number field: the singularities
that get removed, and the points in decomposition certificates, must be
elements of that field.
"""

import logging
from dataclasses import dataclass, field as dc_field

from .balls import format_radius
from .efun import (
    DifferentialSystem,
    EFunction,
    EVector,
    constant,
    falling,
    linear_combination,
    linear_relation_search,
    mul_poly,
    conjugate,
)
from .errors import (
    CertificateInconsistent,
    ConstantTermZero,
    IndependenceSuspect,
    LoopCap,
    NotASingularity,
)
from .numeval import evaluate, zero_probe
from .ratfun import Poly, RatFun, RatMatrix, poly_gcd, poly_lcm, unimodular_complete

log = logging.getLogger(__name__)


def divide_by_poly(f, D):
    """g with f = D g as formal power series (requires D(0) != 0).

    With f = sum a_n z^n/n! and g = sum b_n z^n/n!::

        b_n = (a_n - sum_{k>=1} d_k ff(n,k) b_{n-k}) / d_0
    """
    if not isinstance(D, Poly):
        D = Poly(f.field, D)
    if not D or not D.coeff(0):
        raise ConstantTermZero("divisor must have a non-zero constant term")
    field = f.field if f.field.degree >= D.field.degree else D.field
    d0inv = field.element(D.coeff(0)).inverse()
    ds = [(k, field.element(c)) for k, c in enumerate(D.coeffs) if k and c]

    g = None

    def compute(n):
        acc = field.element(f.coeff(n))
        for k, c in ds:
            if k <= n:
                b = g.coeff(n - k)
                if b:
                    acc = acc - c * b * falling(n, k)
        return acc * d0inv

    g = EFunction(field, compute, name=f"{f.name}/({D.to_expr()})")
    return g


@dataclass
class VanishingReport:
    point: object
    entries: list = dc_field(default_factory=list)  # (label, ball, nonzero certified)

    @property
    def status(self):
        if all(nz for _, _, nz in self.entries):
            return "nonzero certified"
        if not any(nz for _, _, nz in self.entries):
            return "consistent with zero"
        return "mixed"

    def lines(self, digits=20):
        out = [f"status: {self.status}"]
        for label, ball, nz in self.entries:
            tag = "nonzero certified" if nz else f"consistent with zero at radius {format_radius(ball.rad)}"
            out.append(f"{label}: {ball.format(digits)}  [{tag}]")
        return out


def vanishing_certificate(f, z0, digits=30):
    """Balls for f(z0) and, over a Galois field, every f^sigma(sigma(z0))."""
    z0 = f.field.element(z0) if not hasattr(z0, "field") else z0
    rep = VanishingReport(z0)
    field = f.field if f.field.degree >= z0.field.degree else z0.field
    if field.degree > 1 and field.is_galois:
        for s in field.automorphisms:
            fs = conjugate(f, s) if f.field.degree > 1 else f
            ball, nz = zero_probe(fs, s(field.element(z0)), digits)
            rep.entries.append((f"sigma{s.index}", ball, nz))
    else:
        ball, nz = zero_probe(f, z0, digits)
        rep.entries.append(("id", ball, nz))
    return rep


# ---------------------------------------------------------------------------
# singularity relations and desingularization
# ---------------------------------------------------------------------------

def singularity_relation(system, F, alpha, check=True, digits=30):
    """Coprime row (P_1..P_N) with sum P_j(alpha) f_j(alpha) = 0, and j0 with P_j0(alpha) != 0.

    k is the largest pole order at alpha among the entries of A and (i0, j0)
    the first entry (row-major) reaching it; the row comes from the i0-th
    row of (z - alpha)^k A, cleared of denominators and made primitive.
    """
    field = system.field
    alpha = field.element(alpha)
    A = system.A
    N = system.dim
    k, i0, j0 = 0, None, None
    for i in range(N):
        for j in range(N):
            r = A.entries[i][j]
            if r:
                o = r.pole_order(alpha)
                if o > k:
                    k, i0, j0 = o, i, j
    if k == 0:
        raise NotASingularity(f"{alpha.to_expr()} is not a pole of the system")
    Qk = RatFun(Poly.linear_root(alpha) ** k)
    R = [Qk * A.entries[i0][j] for j in range(N)]
    E = Poly.const(field, 1)
    for r in R:
        E = poly_lcm(E, r.den)
    P = [(r * RatFun(E)).num for r in R]
    g = Poly._raw(field, [])
    for p in P:
        g = poly_gcd(g, p)
    P = [p // g for p in P]
    lead = next(p for p in P if p).lead()
    P = [p * lead.inverse() for p in P]
    assert P[j0](alpha)
    if check and F is not None:
        combo = linear_combination([1] * N, [mul_poly(f, p) for f, p in zip(F.components(), P)])
        ball, nonzero = zero_probe(combo, alpha, digits)
        if nonzero:
            raise NotASingularity(
                f"relation at {alpha.to_expr()} does not vanish numerically ({ball}); seeds or system inconsistent")
    return P, j0


def _transform_system(system, T, Tinv):
    """System for e = T f: (T' + T A) T^-1."""
    B = (T.derivative() + T * system.A) * Tinv
    return DifferentialSystem(system.field, B)


@dataclass
class DesingResult:
    B: RatMatrix
    M: RatMatrix
    e: EVector
    steps: int

    @property
    def system(self):
        return DifferentialSystem(self.B.field, self.B)


def desingularize(system, F, order=200, check_independence=True, digits=30):
    """(B, M, e) with e' = B e, f = M e, and B free of finite non-zero poles."""
    field = system.field
    N = system.dim
    if check_independence and N > 1:
        rel = linear_relation_search(F.components(), max_deg=4, max_order=60)
        if rel:
            raise IndependenceSuspect(f"components look linearly dependent: {rel!r}")
    metric0 = system.pole_metric()
    cap = 50 * (metric0 + 1)
    M = RatMatrix.identity(field, N)
    cur_sys, cur = system, F
    steps = 0
    while True:
        sing = cur_sys.singularities()
        if not sing:
            break
        steps += 1
        if steps > cap:
            raise LoopCap(f"desingularization did not finish within {cap} steps")
        alpha = sing[0]
        P, _ = singularity_relation(cur_sys, cur, alpha, check=True, digits=digits)
        S = unimodular_complete(P)
        D = Poly.linear_root(alpha)
        Dm = RatMatrix.diag(field, [RatFun(Poly.const(field, 1), D)] + [1] * (N - 1))
        T = Dm * S
        Sinv = S.inverse()
        Tinv = Sinv * RatMatrix.diag(field, [D] + [1] * (N - 1))
        new_sys = _transform_system(cur_sys, T, Tinv)
        comps = cur.components()
        streams = []
        for i in range(N):
            row = [S.entries[i][j].num for j in range(N)]
            g = linear_combination([1] * N, [mul_poly(f, p) for f, p in zip(comps, row)])
            if i == 0:
                g = divide_by_poly(g, D)
            streams.append(g)
        names = [f"e{i + 1}" for i in range(N)]
        cur = EVector.from_streams(new_sys, streams, names=names)
        cur_sys = new_sys
        M = M * Tinv
        log.info("removed a singularity at %s (step %d)", alpha.to_expr(), steps)
    if not cur_sys.A.denominator_is_power_of_z():
        raise LoopCap("finished with a pole outside z = 0")
    return DesingResult(cur_sys.A, M, cur, steps)


def verify_desing(F, result, order=200):
    """Check f = M e and e' = B e coefficientwise up to ``order``."""
    N = F.dim
    e = result.e.components()
    for i in range(N):
        row = [result.M.entries[i][j].num for j in range(N)]
        combo = linear_combination([1] * N, [mul_poly(g, p) for g, p in zip(e, row)])
        f = F.component(i)
        for n in range(order):
            if combo.coeff(n) != f.coeff(n):
                return False
    return result.e.check_system(order)


# ---------------------------------------------------------------------------
# f = P + Q g
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    P: Poly
    Q: Poly
    g: EFunction
    consumed: list
    flags: list

    def lines(self, digits=20):
        out = [f"P = {self.P.to_expr()}", f"Q = {self.Q.to_expr()}"]
        out.extend(self.flags)
        return out


def polynomial_part(f, order=200):
    """Taylor polynomial of f if its stream looks finite on the first ``order`` terms."""
    last = -1
    for n in range(order):
        if f.coeff(n):
            last = n
    if last < order // 2:
        return Poly(f.field, [f.taylor(n) for n in range(last + 1)])
    return None


def decompose(f, certificates=(), reduce=True, digits=30, order=200):
    """f = P + Q g with g(alpha) not known to be algebraic at any consumed point.

    Certificates are consumed in order; each ``(alpha, P0)`` states that the
    current g takes the value P0(alpha) at alpha (for the first one g = f).
    """
    field = f.field
    poly = polynomial_part(f, order)
    if poly is not None:
        return Decomposition(poly, Poly._raw(field, []), constant(field.zero), [], ["f is a polynomial"])
    P = Poly._raw(field, [])
    Q = Poly.const(field, 1)
    g = f
    consumed = []
    cap = 50 * (len(certificates) + 1)
    for step, (alpha, P0) in enumerate(certificates):
        if step >= cap:
            raise LoopCap("too many decomposition steps")
        alpha = field.element(alpha)
        if alpha.is_zero():
            raise ConstantTermZero("certificate points must be non-zero")
        if not isinstance(P0, Poly):
            P0 = Poly(field, [P0]) if not isinstance(P0, (list, tuple)) else Poly(field, P0)
        g0 = linear_combination([1, -1], [g, _poly_efun(P0)])
        ball, nonzero = zero_probe(g0, alpha, digits)
        if nonzero:
            raise CertificateInconsistent(
                f"g({alpha.to_expr()}) - P0({alpha.to_expr()}) = {ball} is certified non-zero")
        D = Poly.linear_root(alpha)
        g = divide_by_poly(g0, D)
        P = P + Q * P0
        Q = Q * D
        consumed.append(alpha)
    if reduce and Q.degree > 0:
        q, r = divmod(P, Q)
        if q:
            g = linear_combination([1, 1], [g, _poly_efun(q)])
        P = r
    flags = []
    for alpha in consumed:
        ball = evaluate(g, alpha, digits)
        if ball.excludes_zero():
            flags.append(f"g({alpha.to_expr()}) = {ball.format(12)} (non-zero)")
        else:
            flags.append(f"g({alpha.to_expr()}) consistent with zero: certificate list incomplete")
    return Decomposition(P, Q, g, consumed, flags)


def _poly_efun(p):
    """The polynomial p as an E-function stream (a_n = n! p_n)."""
    from math import factorial

    field = p.field
    zero = field.zero
    return EFunction(field, lambda n: p.coeff(n) * factorial(n) if n <= p.degree else zero,
                     name=p.to_expr())


def verify_decomposition(f, dec, order=100):
    rhs = linear_combination([1, 1], [_poly_efun(dec.P), mul_poly(dec.g, dec.Q)]) if dec.Q else _poly_efun(dec.P)
    return all(rhs.coeff(n) == f.coeff(n) for n in range(order))
