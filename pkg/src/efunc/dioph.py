"""Diophantine harness: exponents, continued fractions and scans.

Everything that is reported as certified is decided on exact rationals or
balls; double precision only ranks candidates, which are then re-checked.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as iproduct
from math import comb

import numpy as np

from ._kernels import scan as _kernel
from .balls import ComplexBall, format_radius
from .efun import (
    _merge_fields,
    galois_norm,
    linear_combination,
    scale_argument_stream,
)
from .errors import (
    AssertedRelationFailsNumerically,
    BudgetExceeded,
    InsufficientPrecision,
    MathPreconditionError,
    NotGalois,
    PrecisionTooLow,
    RationalDetected,
    UsageError,
)
from .exactmath import QQ, NFElement
from .numeval import evaluate, zero_probe

log = logging.getLogger(__name__)

KINDS = ("theorem1", "exp", "besselJ0", "A22", "trmes")


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundSpec:
    kind: str
    d: int = 1
    N: int = 2
    D: int = 1


def paper_exponent(spec, d=None, N=None, D=None):
    """Integer exponent kappa for a bound kind (epsilon left to the caller).

    theorem1: d N^d - 1     exp: d 2^d     besselJ0: d 3^d     A22: d 5^d
    trmes:    d C(N+D-1, N-1)^d - 1
    """
    if not isinstance(spec, BoundSpec):
        spec = BoundSpec(spec, 1 if d is None else d, 2 if N is None else N, 1 if D is None else D)
    kind, d, N, D = spec.kind, spec.d, spec.N, spec.D
    if kind not in KINDS:
        raise UsageError(f"unknown bound kind {kind!r}; expected one of {', '.join(KINDS)}")
    if min(d, N, D) < 1:
        raise UsageError("d, N and D must be at least 1")
    if kind == "theorem1":
        return d * N ** d - 1
    if kind == "exp":
        return d * 2 ** d
    if kind == "besselJ0":
        return d * 3 ** d
    if kind == "A22":
        return d * 5 ** d
    return d * comb(N + D - 1, N - 1) ** d - 1


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    certified: bool = True


@dataclass(frozen=True)
class PrecisionStop:
    index: int
    reason: str


class CFExpansion(list):
    """List of convergents; ``stop`` is a PrecisionStop or None, ``exact`` marks termination."""

    def __init__(self, convergents=(), quotients=(), stop=None, exact=False):
        super().__init__(convergents)
        self.quotients = list(quotients)
        self.stop = stop
        self.exact = exact


def _real_interval(xi):
    if isinstance(xi, ComplexBall):
        if abs(xi.im) > xi.rad:
            raise MathPreconditionError("value is not real at this precision")
        return xi.re - xi.rad, xi.re + xi.rad
    x = Fraction(xi)
    return x, x


def _floor(x):
    return x.numerator // x.denominator


def continued_fraction(xi, max_terms=200):
    """Partial quotients determined by the interval of ``xi``, with convergents."""
    lo, hi = _real_interval(xi)
    p0, q0, p1, q1 = 0, 1, 1, 0
    quots, convs = [], []
    stop, exact = None, False
    for i in range(max_terms):
        a = _floor(lo)
        if _floor(hi) != a:
            stop = PrecisionStop(i, "interval straddles an integer")
            break
        quots.append(a)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        convs.append(Convergent(p1, q1, True))
        flo, fhi = lo - a, hi - a
        if flo == 0:
            if fhi == 0:
                exact = True
            else:
                stop = PrecisionStop(i + 1, "interval touches an integer")
            break
        lo, hi = 1 / fhi, 1 / flo
    return CFExpansion(convs, quots, stop, exact)


# ---------------------------------------------------------------------------
# irrationality exponent estimates
# ---------------------------------------------------------------------------

def _log(x):
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass
class ExponentReport:
    samples: list
    estimate: float
    running_max: float
    bound: int = None
    burn_in: int = 5
    dropped: int = 0

    def lines(self):
        out = [f"samples: {len(self.samples)} (burn-in {self.burn_in}, dropped {self.dropped})",
               f"estimate: {self.estimate:.6f}",
               f"running max after burn-in: {self.running_max:.6f}"]
        if self.bound is not None:
            out.append(f"bound: {self.bound}")
        return out


def exponent_estimate(xi, convergents=None, burn_in=5, bound=None):
    """Empirical irrationality exponent from mu_q = -log|xi - p/q| / log q.

    Samples with relative ball error above 1% are dropped (with all later
    ones).  ``estimate`` is the largest mu over the trailing half of the
    samples after the burn-in; ``running_max`` keeps the plain maximum.
    """
    lo, hi = _real_interval(xi)
    mid, rad = (lo + hi) / 2, (hi - lo) / 2
    if convergents is None:
        convergents = continued_fraction(xi)
    if getattr(convergents, "exact", False):
        raise RationalDetected("the continued fraction terminates: value is rational")
    samples = []
    dropped = 0
    for k, c in enumerate(convergents):
        if c.q < 2:
            continue
        dist = abs(mid - Fraction(c.p, c.q))
        if dist == 0 and rad == 0:
            raise RationalDetected(f"value equals {c.p}/{c.q}")
        if dist == 0 or rad * 100 >= dist:
            dropped = len(convergents) - k
            break
        samples.append((c.q, -_log(dist) / _log(c.q)))
    post = samples[burn_in:]
    if not post:
        raise InsufficientPrecision(
            f"only {len(samples)} usable convergents; need more than the burn-in of {burn_in}")
    tail = post[len(post) // 2:]
    return ExponentReport(samples, max(m for _, m in tail), max(m for _, m in post), bound, burn_in, dropped)


# ---------------------------------------------------------------------------
# Liouville exclusion scan
# ---------------------------------------------------------------------------

@dataclass
class LiouvilleReport:
    kappa: Fraction
    q_max: int
    c_min: object
    c_min_lower: object
    argmin: int
    p: int
    certified_positive: bool
    zero_qs: list = dc_field(default_factory=list)

    def lines(self):
        cm = float(self.c_min)
        out = [f"kappa: {self.kappa}", f"Q_max: {self.q_max}",
               f"c_min: {cm:.10g} at q = {self.argmin}, p = {self.p}",
               f"c_min lower bound: {float(self.c_min_lower):.10g}",
               f"certified positive: {'yes' if self.certified_positive else 'no'}"]
        if self.zero_qs:
            out.append("terms consistent with zero at q = " + ", ".join(map(str, self.zero_qs)))
        return out


def _limbs(v, L):
    return np.array([(v >> (32 * (L - 1 - i))) & 0xFFFFFFFF for i in range(L)], dtype=np.uint32)


def _qpow(q, kappa):
    if kappa.denominator == 1:
        return Fraction(q) ** int(kappa)
    return Fraction(float(q) ** float(kappa))


def _chunks(lo, hi, jobs):
    jobs = max(1, min(jobs, hi - lo))
    step = -(-(hi - lo) // jobs)
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def _pmap(fn, ranges, jobs):
    if jobs <= 1 or len(ranges) == 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(lambda r: fn(*r), ranges))


def liouville_scan(xi, kappa, q_max, jobs=1):
    """min over 2 <= q <= q_max of q^kappa |q xi - p(q)| with p(q) nearest to q xi."""
    kappa = Fraction(kappa)
    lo, hi = _real_interval(xi)
    mid, rad = (lo + hi) / 2, (hi - lo) / 2
    if q_max < 2:
        raise UsageError("Q_max must be at least 2")
    if kappa.denominator == 1:
        too_wide = 2 * rad * Fraction(q_max) ** (int(kappa) + 2) >= 1
    else:
        too_wide = rad > 0 and math.log(2) + _log(rad) + (float(kappa) + 2) * math.log(q_max) >= 0
    if too_wide:
        raise PrecisionTooLow(f"radius {format_radius(rad)} too large for Q_max={q_max}, kappa={kappa}")
    frac = mid - _floor(mid)
    need = int((float(kappa) + 2) * math.log2(q_max)) + 64
    if rad:
        need = max(need, -int(math.floor(math.log2(rad))) + 8)
    need = max(need, frac.denominator.bit_length())
    L = -(-need // 32)
    W = 32 * L
    X = (frac.numerator << W) // frac.denominator
    exact_mid = (frac.numerator << W) % frac.denominator == 0
    E = -((-rad.numerator << W) // rad.denominator) + (0 if exact_mid else 1)
    xl, el = _limbs(X, L), _limbs(E, L)
    kf = float(kappa)
    parts = _pmap(lambda a, b: _kernel.frac_dist_limbs(xl, el, a, b, kf), _chunks(2, q_max + 1, jobs), jobs)
    approx = np.concatenate([p[0] for p in parts])
    excl = np.concatenate([p[1] for p in parts])
    qs = np.arange(2, q_max + 1, dtype=np.float64)
    err = qs ** kf * qs * (E / 2.0 ** W) * (1 + 1e-9) + 1e-300
    top = float(np.min(approx + err)) * (1 + 1e-12)
    cands = np.flatnonzero(approx - err <= top) + 2
    best = None
    for q in cands.tolist():
        p = _floor(q * mid + Fraction(1, 2))
        d = abs(q * mid - p)
        w = _qpow(q, kappa)
        val = w * d
        low = w * max(d - q * rad, Fraction(0))
        if best is None or val < best[0]:
            best = (val, low, q, p)
        elif low < best[1]:
            best = (best[0], low, best[2], best[3])
    zero_qs = (np.flatnonzero(excl == 0) + 2).tolist()
    certified = not zero_qs
    val, low, q, p = best
    if not certified:
        low = Fraction(0)
    return LiouvilleReport(kappa, q_max, val, low, q, p, certified, zero_qs[:20])


# ---------------------------------------------------------------------------
# linear-form scan
# ---------------------------------------------------------------------------

@dataclass
class FormValue:
    lams: tuple
    height: float
    value: object  # ComplexBall of Lambda
    score_lower: float
    score_upper: float


@dataclass
class ScanReport:
    kappa: Fraction
    H_max: int
    forms: int
    minimum: FormValue
    argmin: list
    vanishing: list
    records: list
    warnings: list = dc_field(default_factory=list)

    def lines(self, digits=12):
        m = self.minimum
        out = [f"forms scanned: {self.forms} (one of each +-lambda)",
               f"min height^kappa |Lambda|: {m.score_lower:.{digits}g} .. {m.score_upper:.{digits}g}",
               "argmin: " + "; ".join(_fmt_lams(a.lams) for a in self.argmin)]
        out.append(f"candidate exact vanishing forms: {len(self.vanishing)}")
        for v in self.vanishing[:10]:
            out.append(f"  {_fmt_lams(v.lams)}  Lambda = {v.value.format(8)}")
        out.append("records (height, lambda, |Lambda|):")
        for h, f, certified in self.records:
            tag = "" if certified else "  [not separated in double precision]"
            out.append(f"  {h:g}  {_fmt_lams(f.lams)}  {float(f.value.mag_upper()):.6e}{tag}")
        out.extend(f"warning: {w}" for w in self.warnings)
        return out


def _fmt_lams(lams):
    return "(" + ", ".join(l.to_text() for l in lams) + ")"


def _element_grid(field, H):
    """Elements of Z[t] with house <= H: (coords, complex value, house, sign)."""
    d = field.degree
    if d == 1:
        return [((Fraction(a),), complex(a), float(abs(a)), (a > 0) - (a < 0)) for a in range(-H, H + 1)]
    roots = np.array([complex(b) for b in field.roots(64)])
    V = np.vander(roots, d, increasing=True)  # V[k, i] = root_k^i
    Vinv = np.linalg.inv(V)
    bounds = [int(math.ceil(np.sum(np.abs(Vinv[i])) * H * (1 + 1e-9))) for i in range(d)]
    box = 1
    for b in bounds:
        box *= 2 * b + 1
    if box > 5 * 10 ** 6:
        raise BudgetExceeded(f"coordinate box of {box} points for house <= {H}")
    out = []
    emb = field.embedding
    for coords in iproduct(*[range(-b, b + 1) for b in bounds]):
        c = np.array(coords, dtype=float)
        conj = V @ c
        h = float(np.max(np.abs(conj)))
        if h > H * (1 + 1e-9):
            continue
        if h > H * (1 - 1e-9):
            hb = field.element(list(coords)).house(128)
            if hb.re - hb.rad > H:
                continue
        first = next((x for x in coords if x), 0)
        out.append((tuple(Fraction(x) for x in coords), complex(conj[emb]), h, (first > 0) - (first < 0)))
    return out


def linear_form_scan(fs, z0, H_max, kappa=1, digits=60, budget=5 * 10 ** 7, jobs=1):
    """Exhaustive min of house(lambda)^kappa |sum lambda_j f_j(z0)| over 0 < house <= H_max.

    lambda runs over Z[t]^N (power basis of the generator) up to sign.  Forms
    whose ball contains 0 are reported separately and not minimized over.
    """
    if hasattr(fs, "components"):
        fs = fs.components()
    fs = list(fs)
    N = len(fs)
    kappa = Fraction(kappa)
    field = fs[0].field
    for f in fs[1:]:
        field = _merge_fields(field, f.field)
    if isinstance(z0, NFElement):
        field = _merge_fields(field, z0.field)
    z0 = field.element(z0) if not isinstance(z0, ComplexBall) else z0
    warnings = []
    if not field.has_integral_generator():
        raise MathPreconditionError("generator is not an algebraic integer; cannot enumerate integers")
    if not field.power_basis_is_maximal():
        warnings.append("power basis of the generator may span a proper subring of the integers")
    grid = _element_grid(field, H_max)
    M = len(grid)
    total = M ** N
    if N * total > budget:
        raise BudgetExceeded(f"{total} lattice points x N={N} exceeds the budget {budget}")
    vals = [evaluate(f, z0, digits) for f in fs]
    prec = vals[0].prec
    heights = sorted({round(g[2], 9) for g in grid})
    rank_of = {h: i for i, h in enumerate(heights)}
    kf = float(kappa)
    hpow = np.array([h ** kf for h in heights])
    vre = np.empty((N, M))
    vim = np.empty((N, M))
    rank = np.empty((N, M), dtype=np.int32)
    sgn = np.empty((N, M), dtype=np.int8)
    for j, v in enumerate(vals):
        vc = complex(v)
        for m, (_, emb, h, s) in enumerate(grid):
            w = emb * vc
            vre[j, m], vim[j, m] = w.real, w.imag
            rank[j, m] = rank_of[round(h, 9)]
            sgn[j, m] = s
    counts = np.array([M] * N, dtype=np.int64)
    vmax = [float(np.max(np.hypot(vre[j], vim[j]))) for j in range(N)]
    coord_scale = max(sum(abs(float(x)) for x in g[0]) for g in grid) * max(
        1.0, max(abs(complex(b)) for b in field.roots(64)) ** (field.degree - 1))
    E_abs = 2.0 ** -44 * (N + field.degree) * (sum(vmax) + coord_scale * sum(abs(complex(v)) for v in vals))
    E_abs += sum(float(v.rad) for v in vals) * H_max * field.degree
    tau = 64 * E_abs
    slot0 = M if N > 1 else M
    ranges = _chunks(0, slot0, jobs)

    parts = _pmap(lambda a, b: _kernel.forms_scan(vre, vim, rank, sgn, counts, hpow, a, b, tau), ranges, jobs)
    min_val = min(p[0] for p in parts)
    R = len(heights)
    best_abs = np.full(R, np.inf)
    second_abs = np.full(R, np.inf)
    best_idx = np.full(R, -1, dtype=np.int64)
    tiny = []
    for _, _, ba, bi, sa, tl, n_t in parts:
        if n_t > len(tl):
            raise BudgetExceeded(f"{n_t} forms within {tau:.3g} of zero; too many to re-check")
        tiny.extend(tl.tolist())
        for r in range(R):
            cand = sorted([(best_abs[r], best_idx[r]), (ba[r], bi[r]), (second_abs[r], -1), (sa[r], -1)],
                          key=lambda t: t[0])
            best_abs[r], best_idx[r] = cand[0]
            second_abs[r] = cand[1][0]

    def decode(flat):
        idx = []
        for _ in range(N):
            flat, m = divmod(flat, M)
            idx.append(m)
        return tuple(reversed(idx))

    def lam_of(idx):
        return tuple(field.element(list(grid[m][0])) for m in idx)

    def exact(idx):
        lams = lam_of(idx)
        acc = ComplexBall(0, 0, 0, prec)
        for l, v in zip(lams, vals):
            if not l.is_zero():
                acc = acc + l.embed(prec=prec) * v
        h = max(grid[m][2] for m in idx)
        if field.degree == 1:
            hk = float(_qpow(int(h), kappa)) if h else 0.0
        else:
            hk = h ** kf
        ab = acc.abs()
        lo_ = float(max(ab.re - ab.rad, 0)) * hk * (1 - 1e-15)
        hi_ = float(ab.re + ab.rad) * hk * (1 + 1e-15)
        return FormValue(lams, h, acc, lo_, hi_)

    vanishing, tiny_live = [], []
    for flat in tiny:
        fv = exact(decode(flat))
        (vanishing if fv.value.contains_zero() else tiny_live).append(fv)

    hmax_k = H_max ** kf
    thr = (min_val + 2 * E_abs * hmax_k) * (1 + 1e-12) if math.isfinite(min_val) else -1.0
    cands = []
    if thr >= 0:
        for out, n_out in _pmap(lambda a, b: _kernel.forms_collect(vre, vim, rank, sgn, counts, hpow, a, b, thr),
                                ranges, jobs):
            if n_out > len(out):
                raise BudgetExceeded("too many near-minimal forms to re-check")
            cands.extend(out.tolist())
    checked = [exact(decode(f)) for f in sorted(set(cands) - set(tiny))] + tiny_live
    if not checked:
        raise MathPreconditionError("every form is a candidate exact vanishing; nothing to minimize")
    best_hi = min(c.score_upper for c in checked)
    argmin = sorted((c for c in checked if c.score_lower <= best_hi), key=lambda c: c.score_upper)
    minimum = argmin[0]

    # records: height-ordered strict improvements of min |Lambda|
    tiny_by_rank = {}
    for fv in tiny_live:
        r = rank_of[round(fv.height, 9)]
        a = float(fv.value.mag_upper())
        if a < tiny_by_rank.get(r, (np.inf,))[0]:
            tiny_by_rank[r] = (a, fv)
    records = []
    running = np.inf
    for r in range(R):
        a, fl = best_abs[r], best_idx[r]
        fv = None
        if r in tiny_by_rank and tiny_by_rank[r][0] < a:
            a, fv = tiny_by_rank[r]
        if a < running - 2 * E_abs:
            if fv is None:
                fv = exact(decode(int(fl)))
            separated = second_abs[r] - a > 2 * E_abs
            records.append((heights[r], fv, bool(separated)))
            running = a
        elif a < running:
            running = a
    return ScanReport(kappa, H_max, total // 2, minimum, argmin, vanishing, records, warnings)


# ---------------------------------------------------------------------------
# the norm linear form
# ---------------------------------------------------------------------------

@dataclass
class NormReport:
    varpi: ComplexBall
    varpi_stream: ComplexBall
    Lambda: ComplexBall
    agree: bool
    c_prime: Fraction
    H: Fraction
    trivial_bound_ok: bool

    def lines(self, digits=20):
        return [f"Lambda = {self.Lambda.format(digits)}",
                f"varpi (product of conjugate forms) = {self.varpi.format(digits)}",
                f"varpi (norm stream at 1) = {self.varpi_stream.format(digits)}",
                f"routes agree: {'yes' if self.agree else 'NO'}",
                f"c' = {float(self.c_prime):.6g}, H = {float(self.H):.6g}",
                f"|varpi| <= c' H^(d-1) |Lambda|: {'yes' if self.trivial_bound_ok else 'NO'}"]


def norm_linear_form(lams, fs, z0=1, digits=40):
    """varpi = prod_sigma sum_j sigma(lambda_j) f_j^sigma(sigma(z0)), computed two ways."""
    from .efun import conjugate as conj_stream

    if hasattr(fs, "components"):
        fs = fs.components()
    fs = list(fs)
    N = len(fs)
    if len(lams) != N:
        raise UsageError("coefficient and function counts differ")
    field = fs[0].field
    for f in fs[1:]:
        field = _merge_fields(field, f.field)
    for l in lams:
        if isinstance(l, NFElement):
            field = _merge_fields(field, l.field)
    if isinstance(z0, NFElement):
        field = _merge_fields(field, z0.field)
    lams = [field.element(l) for l in lams]
    z0 = field.element(z0)
    for l in lams:
        if not l.is_integral():
            raise MathPreconditionError(f"coefficient {l.to_expr()} is not an algebraic integer")
    from .numeval import linear_form
    Lam = linear_form(lams, fs, z0, digits)
    H = max(l.house_upper(128) for l in lams)
    d = field.degree
    if d == 1:
        return NormReport(Lam, Lam, Lam, True, Fraction(1), H, True)
    if not field.is_galois:
        raise NotGalois("norm linear form needs a Galois field with known automorphisms")
    varpi = None
    c_prime = Fraction(1)
    for s in field.automorphisms:
        conj_fs = [conj_stream(f, s) for f in fs]
        pt = s(z0)
        factor = linear_form([s(l) for l in lams], conj_fs, pt, digits + 10)
        varpi = factor if varpi is None else varpi * factor
        if not s.is_identity():
            m = max(evaluate(g, pt, 20).mag_upper() for g in conj_fs)
            c_prime *= N * m + 1
    h = linear_combination(lams, [scale_argument_stream(f, z0) for f in fs])
    norm = galois_norm(h)
    varpi_b = evaluate(norm, 1, digits + 10)
    agree = varpi.overlaps(varpi_b)
    ok = varpi.mag_lower() <= c_prime * H ** (d - 1) * Lam.mag_upper()
    return NormReport(varpi, varpi_b, Lam, agree, c_prime, H, ok)


# ---------------------------------------------------------------------------
# trace descent
# ---------------------------------------------------------------------------

@dataclass
class DescentReport:
    coeffs: list
    degree: int
    normalized: bool
    ball: ComplexBall

    def lines(self, digits=20):
        return ["descended: (" + ", ".join(c.to_expr() for c in self.coeffs) + ")",
                f"[L:K] = {self.degree}",
                f"descended form at the point: {self.ball.format(digits)}"]


def relation_descend(lams, fs, z0=1, subgroup=None, digits=60):
    """Traces Tr_{L/K}(lambda_i) of an asserted relation sum lambda_i f_i(z0) = 0.

    L is the field of the coefficients (Galois, automorphisms known) and K
    the fixed field of ``subgroup`` (automorphism indices; default all, so
    K = Q).  When lambda_1 is not in K the vector is first divided by it.
    """
    if hasattr(fs, "components"):
        fs = fs.components()
    fs = list(fs)
    L = None
    for l in lams:
        if isinstance(l, NFElement):
            L = l.field if L is None else _merge_fields(L, l.field)
    for f in fs:
        L = f.field if L is None else _merge_fields(L, f.field)
    L = L or QQ
    if not L.is_galois:
        raise NotGalois("trace descent needs the automorphisms of L")
    lams = [L.element(l) for l in lams]
    auts = L.automorphisms
    H = [auts[i] for i in subgroup] if subgroup is not None else list(auts)
    ball, nonzero = zero_probe(linear_combination(lams, fs), z0, digits)
    if nonzero:
        raise AssertedRelationFailsNumerically(f"sum lambda_i f_i = {ball.format(12)} is not zero")

    def in_K(x):
        return all(h(x) == x for h in H)

    normalized = False
    if lams[0].is_zero():
        raise MathPreconditionError("first coefficient must be non-zero")
    if not in_K(lams[0]):
        inv = lams[0].inverse()
        lams = [l * inv for l in lams]
        normalized = True
    traced = []
    for l in lams:
        acc = L.zero
        for h in H:
            acc = acc + h(l)
        traced.append(acc)
    assert all(in_K(t) for t in traced)
    ball2, nonzero2 = zero_probe(linear_combination(traced, fs), z0, digits)
    if nonzero2:
        raise AssertedRelationFailsNumerically(f"descended form = {ball2.format(12)} is not zero")
    return DescentReport(traced, len(H), normalized, ball2)
