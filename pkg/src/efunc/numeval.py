"""Evaluation of E-functions at algebraic points with explicit tail bounds.

The partial sum is formed exactly in the number field and only then turned
into a ball.  The tail is bounded by the first applicable method:

1. ``alternating``: a hypergeometric certificate shows that the real terms
   alternate in sign and decrease in modulus from the cut-off on (checked
   for all larger indices by a Taylor shift of the term ratio), so the tail
   is at most the first omitted term.  Rigorous.
2. ``majorant``: a certified coefficient bound ``C (n+1)^k rho^n`` gives a
   majorant series whose term ratio is at most 1/2 past the cut-off.
   Rigorous.
3. ``heuristic``: the growth constant is estimated from the computed prefix,
   doubled, and checked on a guard window of further coefficients.  The
   result is flagged as heuristic.
"""

import logging
import math

import mpmath
from dataclasses import dataclass
from fractions import Fraction

from .balls import ComplexBall, round_dyadic
from .efun import linear_combination
from .errors import GrowthUnboundedOnPrefix, PrecisionExhausted
from .exactmath import NFElement, QQ
from .ratfun import Poly

log = logging.getLogger(__name__)

GUARD = 32
MAX_RETRIES = 4
MAX_TERMS = 200_000


@dataclass
class EvalReport:
    ball: ComplexBall
    method: str
    heuristic: bool
    terms: int
    tail: Fraction
    digits: int

    def format(self, digits=None):
        return self.ball.format(digits or self.digits)


def working_prec(digits):
    return 4 * digits + 64


def _as_point(f, z0):
    if isinstance(z0, ComplexBall):
        return z0
    if isinstance(z0, NFElement):
        return z0
    return f.field.element(z0)


def evaluate(f, z0, digits=30):
    """Ball of radius <= 10^-digits containing f(z0)."""
    return evaluate_report(f, z0, digits).ball


def evaluate_report(f, z0, digits=30):
    z0 = _as_point(f, z0)
    eps = Fraction(1, 10 ** digits)
    prec = working_prec(digits)
    if isinstance(z0, NFElement) and z0.is_zero():
        a0 = f.coeff(0)
        ball = a0.embed(prec=prec) if not a0.is_rational() else ComplexBall(a0.c[0], 0, 0, prec)
        return EvalReport(ball, "exact", False, 1, Fraction(0), digits)
    if isinstance(z0, ComplexBall):
        return _evaluate_ball(f, z0, digits, eps, prec)
    return _evaluate_exact(f, z0, digits, eps, prec)


# -- tail certificates -------------------------------------------------------

def _taylor_shift(p, a):
    """Coefficients of p(a + x) (p over Q)."""
    cs = [c.c[0] for c in p.coeffs]
    out = [Fraction(0)] * len(cs)
    for c in reversed(cs):
        # out = out * (a + x) + c
        nxt = [Fraction(0)] * len(cs)
        for i, v in enumerate(out):
            if v:
                nxt[i] += v * a
                if i + 1 < len(nxt):
                    nxt[i + 1] += v
        nxt[0] += c
        out = nxt
    return out


def _nonneg_from(p, n1):
    """True if all Taylor coefficients of p at n1 are >= 0 (so p >= 0 on [n1, oo))."""
    return all(c >= 0 for c in _taylor_shift(p, n1))


def _alternating_ok(hyper, zr, n1):
    """Terms t_{n+r} = q(n) t_n with -1 <= q(n) <= 0 for every n >= n1."""
    r = hyper.step
    A = hyper.num * zr
    B = hyper.den
    for i in range(1, r + 1):
        B = B * Poly(QQ, [i, 1])
    if not (_nonneg_from(B, n1) and B(n1) != 0):
        return False
    return _nonneg_from(-A, n1) and _nonneg_from(B + A, n1)


def _alt_setup(f, z0):
    h = f.hyper
    if h is None or not isinstance(z0, NFElement):
        return None
    zr = z0 ** h.step
    if not zr.is_rational():
        return None
    return h, QQ.rational(zr.c[0])


def _majorant_term(bound, zabs, n):
    return bound.C * (n + 1) ** bound.k * (bound.rho * zabs) ** n / math.factorial(n)


def _majorant_ok(bound, zabs, n):
    """Majorant ratio m_{j+1}/m_j <= 1/2 for all j >= n (ratio is decreasing in j)."""
    lhs = Fraction((n + 2) ** bound.k, (n + 1) ** bound.k) * bound.rho * zabs
    return 2 * lhs <= n + 1


def _float_roots(field):
    rs = getattr(field, "_float_roots", None)
    if rs is None:
        rs = [mpmath.mpc(float(b.re), float(b.im)) for b in field.roots(64)]
        field._float_roots = rs
    return rs


def _house_log(a):
    """log house(a) to about 15 digits, or None for a = 0 (estimates only)."""
    if a.is_zero():
        return None
    if a.is_rational():
        c = abs(a.c[0])
        return math.log(c.numerator) - math.log(c.denominator)
    with mpmath.workprec(64):
        best = None
        for r in _float_roots(a.field):
            v = mpmath.mpf(0)
            for c in reversed(a.c):
                v = v * r + mpmath.mpf(c.numerator) / c.denominator
            av = abs(v)
            if av:
                lg = float(mpmath.log(av))
                best = lg if best is None else max(best, lg)
        return best


class _Growth:
    """Running max of house(a_n)^(1/n) over 1 <= n < upto."""

    def __init__(self, f):
        self.f = f
        self.upto = 1
        self.best = 1.0

    def constant(self, upto):
        for n in range(self.upto, upto):
            lg = _house_log(self.f.coeff(n))
            if lg is not None:
                self.best = max(self.best, math.exp(lg / n))
        self.upto = max(self.upto, upto)
        return Fraction(self.best).limit_denominator(10 ** 6) * Fraction(1001, 1000)


def _growth_constant(f, upto):
    return _Growth(f).constant(upto)


# -- summation ------------------------------------------------------------------

def _evaluate_exact(f, z0, digits, eps, prec):
    field = f.field if f.field.degree >= z0.field.degree else z0.field
    z0 = field.element(z0)
    zabs = z0.house_upper(64)
    alt = _alt_setup(f, z0)
    if alt and (alt[0].num * alt[1]).lead().c[0] >= 0:
        alt = None  # ratio eventually non-negative: terms never alternate
    bound = f.bound
    method = "alternating" if alt else ("majorant" if bound else "heuristic")
    S = field.zero
    zp = field.one
    fact = 1
    n = 0
    growth = _Growth(f)
    tail = None
    while n < MAX_TERMS:
        a = f.coeff(n)
        term = None
        if a:
            term = field.element(a) * zp / fact
        # try to stop before adding term n
        if method == "alternating":
            h, zr = alt
            if (n % h.step) in h.residues and n > 0 and (term is None or term.is_rational()):
                tb = abs(term.c[0]) if term is not None else Fraction(0)
                if tb <= eps / 4:
                    if _alternating_ok(h, zr.c[0], n):
                        tail = tb
                        break
                    method = "majorant" if bound else "heuristic"
        elif method == "majorant":
            if n > 0 and _majorant_ok(bound, zabs, n):
                m = _majorant_term(bound, zabs, n)
                if 2 * m <= eps / 4:
                    tail = 2 * m
                    break
        else:
            if n >= 8 and n % 8 == 0:
                C2 = 2 * growth.constant(n)
                if 2 * C2 * zabs <= n + 1:
                    m = (C2 * zabs) ** n / math.factorial(n)
                    if 2 * m <= eps / 4:
                        _check_guard(f, C2, n)
                        tail = 2 * m
                        break
        if term is not None:
            S = S + term
        n += 1
        zp = zp * z0
        fact *= n
    else:
        raise PrecisionExhausted(f"no tail bound within {MAX_TERMS} terms")
    ball = _embed_with_retry(S, tail, eps, prec)
    return EvalReport(ball, method, method == "heuristic", n, tail, digits)


def _check_guard(f, C2, n):
    for m in range(n, n + GUARD):
        lg = _house_log(f.coeff(m))
        if lg is not None and lg > m * math.log(C2):
            raise GrowthUnboundedOnPrefix(
                f"coefficient {m} exceeds the inflated growth estimate {float(C2):.4g}^n")


def _embed_with_retry(S, tail, eps, prec):
    for _ in range(MAX_RETRIES + 1):
        if S.is_rational():
            mid, err = round_dyadic(S.c[0], prec)
            ball = ComplexBall(mid, 0, err + tail, prec)
        else:
            ball = S.embed(prec=prec).add_error(tail)
        if ball.rad <= eps:
            return ball
        prec *= 2
    raise PrecisionExhausted(f"ball radius {float(ball.rad):.3g} above the target after retries")


def _evaluate_ball(f, z, digits, eps, prec):
    zabs = z.mag_upper()
    bound = f.bound
    method = "majorant" if bound else "heuristic"
    growth = _Growth(f)
    for _ in range(MAX_RETRIES + 1):
        S = ComplexBall(0, 0, 0, prec)
        zp = ComplexBall(1, 0, 0, prec)
        fact = 1
        tail = None
        for n in range(MAX_TERMS):
            if method == "majorant":
                if n > 0 and _majorant_ok(bound, zabs, n):
                    m = _majorant_term(bound, zabs, n)
                    if 2 * m <= eps / 4:
                        tail = 2 * m
                        break
            elif n >= 8 and n % 8 == 0:
                C2 = 2 * growth.constant(n)
                if 2 * C2 * zabs <= n + 1:
                    m = (C2 * zabs) ** n / math.factorial(n)
                    if 2 * m <= eps / 4:
                        _check_guard(f, C2, n)
                        tail = 2 * m
                        break
            a = f.coeff(n)
            if a:
                S = S + a.embed(prec=prec) * zp * Fraction(1, fact)
            zp = zp * z
            fact *= n + 1
        if tail is None:
            raise PrecisionExhausted(f"no tail bound within {MAX_TERMS} terms")
        ball = S.add_error(tail)
        if ball.rad <= eps:
            return EvalReport(ball, method, method == "heuristic", n, tail, digits)
        prec *= 2
    raise PrecisionExhausted("input ball too wide for the requested digits")


# -- linear forms ------------------------------------------------------------

def linear_form(lams, fs, z0, digits=30):
    """Ball for sum lam_j f_j(z0); the combination is formed before summing."""
    return linear_form_report(lams, fs, z0, digits).ball


def linear_form_report(lams, fs, z0, digits=30):
    if hasattr(fs, "components"):
        fs = fs.components()
    if len(lams) != len(fs):
        raise ValueError("coefficient and function counts differ")
    if all((l == 0) for l in lams):
        return EvalReport(ComplexBall(0, 0, 0, working_prec(digits)), "exact", False, 0, Fraction(0), digits)
    g = linear_combination(lams, fs)
    return evaluate_report(g, z0, digits)


# -- growth -------------------------------------------------------------------

@dataclass
class GrowthReport:
    C_hat: float
    C_hat_half: float
    stabilization: float
    ratio_estimate: float
    denominator_growth: float
    n_max: int

    def lines(self):
        return [
            f"C_hat = {self.C_hat:.6g}",
            f"C_hat(first half) = {self.C_hat_half:.6g}",
            f"stabilization = {self.stabilization:.3g}",
            f"ratio estimate = {self.ratio_estimate:.6g}",
            f"denominator growth = {self.denominator_growth:.6g}",
        ]


def growth_report(f, n_max=200):
    """Empirical growth of house(a_n)^(1/n) and of the coefficient denominators."""
    logs = []
    lcm = 1
    for n in range(n_max + 1):
        a = f.coeff(n)
        logs.append(_house_log(a))
        for c in a.c:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    def best(upto):
        vals = [math.exp(lg / n) for n, lg in enumerate(logs[:upto + 1]) if n >= 2 and lg is not None]
        return max(vals, default=0.0)
    C = best(n_max)
    C_half = best(n_max // 2)
    stab = abs(C - C_half) / C if C else 0.0
    ratio = 0.0
    for n in range(n_max, 1, -1):
        if logs[n] is not None and logs[n - 1] is not None:
            ratio = math.exp(logs[n] - logs[n - 1])
            break
        if logs[n] is not None and n >= 2 and logs[n - 2] is not None:
            ratio = math.exp((logs[n] - logs[n - 2]) / 2)
            break
    dg = math.log(lcm) / n_max if n_max else 0.0
    return GrowthReport(C, C_half, stab, ratio, dg, n_max)


def zero_probe(f, z0, digits=30):
    """Ball for f(z0), escalating digits x4 twice while the ball still contains 0.

    Returns (ball, certified_nonzero).  A ball containing 0 is never a proof
    of vanishing.
    """
    ball = None
    for k in range(3):
        ball = evaluate(f, z0, digits * 4 ** k)
        if ball.excludes_zero():
            return ball, True
        log.info("value consistent with zero at %d digits", digits * 4 ** k)
    return ball, False
