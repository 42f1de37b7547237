"""Exact arithmetic in a number field K = Q(theta) = Q[x]/(minpoly).

Elements are coordinate vectors on the power basis 1, theta, ..., theta^(d-1)
with :class:`~fractions.Fraction` entries.  Complex embeddings come from
validated root enclosures of the minimal polynomial; Galois automorphisms are
supplied by the caller (or found by a small brute-force search) and verified
exactly.
"""

import itertools
import logging
import threading
from fractions import Fraction

import mpmath

from .balls import ComplexBall, sqrt_bounds, upper_dyadic
from .errors import (
    AutomorphismInvalid,
    DivisionByZero,
    FieldLacksI,
    FieldMismatch,
    NotGalois,
    NotSquarefree,
    RootIsolationFailure,
    SearchExhausted,
)

log = logging.getLogger(__name__)

BASE_PREC = 128
MAX_PREC = 1 << 16


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists low -> high
# ---------------------------------------------------------------------------

def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a, b):
    a, b = _qtrim(a), _qtrim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a.pop()
        a = _qtrim(a)
    return q, a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qgcdex(a, b):
    """Return (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = _qtrim(a), _qtrim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        t0, t1 = t1, _qsub(t0, _qmul(q, t1))
    if not r0:
        return [], [], []
    c = r0[-1]
    return [x / c for x in r0], [x / c for x in s0], [x / c for x in t0]


def _qderiv(p):
    return [i * p[i] for i in range(1, len(p))]


def _horner_complex(p, re, im):
    """Evaluate rational polynomial at an exact complex rational point."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(p):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _mpf_to_fraction(x):
    p, q = mpmath.libmp.to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def _round_fraction(x, bits):
    """Round x to a dyadic with about ``bits`` significant bits."""
    if x == 0:
        return x
    s = bits - (abs(x.numerator).bit_length() - x.denominator.bit_length())
    if s >= 0:
        return Fraction(round(x * (1 << s)), 1 << s)
    return Fraction(round(x / (1 << -s)) << -s)


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

class NumberField:
    """The field Q[x]/(minpoly) with one distinguished complex embedding.

    ``minpoly`` is a coefficient list, constant term first; it must be monic
    and squarefree (irreducibility is the caller's responsibility).
    ``automorphisms`` are images of the generator, each given as anything
    :meth:`element` accepts (typically a coordinate list).
    """

    def __init__(self, minpoly, automorphisms=None, embedding=0, name=None):
        m = _qtrim(Fraction(c) for c in minpoly)
        if len(m) < 2:
            raise NotSquarefree("minimal polynomial must have degree >= 1")
        if m[-1] != 1:
            raise NotSquarefree("minimal polynomial must be monic")
        g, _, _ = _qgcdex(m, _qderiv(m))
        if len(g) > 1:
            raise NotSquarefree(f"minpoly shares a factor of degree {len(g) - 1} with its derivative")
        self.minpoly = tuple(m)
        self.degree = len(m) - 1
        self.name = name
        self._lock = threading.Lock()
        self._root_cache = {}
        self._base = self._isolate(BASE_PREC)
        if not 0 <= embedding < self.degree:
            raise ValueError("embedding index out of range")
        self.embedding = embedding
        self.automorphisms = None
        if self.degree == 1:
            self.automorphisms = [Automorphism(self, self.gen)]
        elif automorphisms is not None:
            self.set_automorphisms(automorphisms)

    # -- identity -------------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.minpoly == other.minpoly
            and self.embedding == other.embedding
        )

    def __hash__(self):
        return hash((self.minpoly, self.embedding))

    def __repr__(self):
        if self.name:
            return f"NumberField({self.name})"
        return f"NumberField(minpoly={format_poly(self.minpoly, 'x')})"

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def is_galois(self):
        return self.automorphisms is not None

    # -- elements -------------------------------------------------------------
    def element(self, x):
        """Coerce an int, Fraction, coordinate list or NFElement into this field."""
        if isinstance(x, NFElement):
            if x.field is self or x.field == self:
                return x if x.field is self else NFElement(self, x.c)
            if x.field.degree == 1:
                return self.rational(x.c[0])
            raise FieldMismatch(f"element of {x.field!r} is not in {self!r}")
        if isinstance(x, (list, tuple)):
            if len(x) > self.degree:
                raise ValueError(f"expected at most {self.degree} coordinates, got {len(x)}")
            c = [Fraction(v) for v in x] + [Fraction(0)] * (self.degree - len(x))
            return NFElement(self, tuple(c))
        if isinstance(x, str):
            from .exprparse import parse_element
            return parse_element(x, self)
        return self.rational(x)

    __call__ = element

    def rational(self, q):
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(q)
        return NFElement(self, tuple(c))

    @property
    def zero(self):
        return self.rational(0)

    @property
    def one(self):
        return self.rational(1)

    @property
    def gen(self):
        if self.degree == 1:
            return self.rational(-self.minpoly[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return NFElement(self, tuple(c))

    def basis(self):
        return [self.gen ** i for i in range(self.degree)]

    # -- embeddings -----------------------------------------------------------
    def _isolate(self, prec):
        """Validated root discs, ordered: real roots descending, then complex."""
        m = self.minpoly
        d = self.degree
        if d == 1:
            return [ComplexBall(-m[0], 0, 0, prec)]
        coeffs = [m[d - i] for i in range(d + 1)]
        bits = prec
        while bits <= MAX_PREC:
            dps = int(bits * 0.30103) + 20
            try:
                with mpmath.workdps(dps):
                    approx = mpmath.polyroots(
                        [mpmath.mpf(c.numerator) / c.denominator for c in coeffs],
                        maxsteps=200 + 4 * dps, extraprec=dps,
                    )
            except mpmath.libmp.NoConvergence:
                bits *= 2
                continue
            pts = []
            for z in approx:
                re = z.real if hasattr(z, "real") else z
                im = z.imag if isinstance(z, mpmath.mpc) else mpmath.mpf(0)
                pts.append([_round_fraction(_mpf_to_fraction(re), bits + 8),
                            _round_fraction(_mpf_to_fraction(im), bits + 8)])
            radii = self._validate(pts, snap_real=True) or self._validate(pts, snap_real=False)
            if radii is not None:
                target = Fraction(1, 1 << prec)
                if all(r <= target * (1 + abs(p[0]) + abs(p[1])) for r, p in zip(radii, pts)):
                    balls = [ComplexBall(p[0], p[1], r, prec) for p, r in zip(pts, radii)]
                    return balls
            bits *= 2
        raise RootIsolationFailure(f"could not isolate roots of {format_poly(m, 'x')} within {MAX_PREC} bits")

    def _validate(self, pts, snap_real):
        """Inclusion discs d*|W_i| (Weierstrass corrections); None unless disjoint."""
        d = self.degree
        pts_used = []
        for re, im in pts:
            if snap_real and im != 0 and abs(im) < Fraction(1, 1 << 20) * (1 + abs(re)):
                im = Fraction(0)
            pts_used.append((re, im))
        radii = []
        for i, (re, im) in enumerate(pts_used):
            pr, pi = _horner_complex(self.minpoly, re, im)
            dr, di = Fraction(1), Fraction(0)
            for j, (re2, im2) in enumerate(pts_used):
                if j != i:
                    ar, ai = re - re2, im - im2
                    if ar == 0 and ai == 0:
                        return None
                    dr, di = dr * ar - di * ai, dr * ai + di * ar
            den = dr * dr + di * di
            w2 = (pr * pr + pi * pi) / den
            radii.append(upper_dyadic(d * sqrt_bounds(w2)[1]))
        for i in range(d):
            for j in range(i + 1, d):
                ar = pts_used[i][0] - pts_used[j][0]
                ai = pts_used[i][1] - pts_used[j][1]
                s = radii[i] + radii[j]
                if s * s >= ar * ar + ai * ai:
                    return None
        for k, p in enumerate(pts_used):
            pts[k][0], pts[k][1] = p
        order = sorted(range(d), key=lambda k: (pts[k][1] != 0, -pts[k][0], -pts[k][1]))
        pts[:] = [pts[k] for k in order]
        return [radii[k] for k in order]

    def roots(self, prec=BASE_PREC):
        """Root balls of minpoly, consistent in order with the base isolation."""
        if prec <= BASE_PREC:
            return list(self._base)
        with self._lock:
            cached = self._root_cache.get(prec)
            if cached is None:
                fresh = self._isolate(prec)
                cached = [None] * self.degree
                for b in fresh:
                    hits = [k for k, base in enumerate(self._base) if base.overlaps(b)]
                    if len(hits) != 1:
                        raise RootIsolationFailure("refined roots do not match the base isolation")
                    cached[hits[0]] = b
                self._root_cache[prec] = cached
        return list(cached)

    def root(self, prec=BASE_PREC):
        return self.roots(prec)[self.embedding]

    # -- Galois structure -----------------------------------------------------
    def set_automorphisms(self, images):
        auts = [Automorphism(self, self.element(s)) for s in images]
        if len(auts) != self.degree:
            raise AutomorphismInvalid(
                f"a Galois field of degree {self.degree} needs {self.degree} automorphisms, got {len(auts)}")
        seen = set()
        for a in auts:
            if a.image.c in seen:
                raise AutomorphismInvalid("automorphisms are not distinct")
            seen.add(a.image.c)
        if self.gen.c not in seen:
            raise AutomorphismInvalid("identity automorphism missing")
        for a in auts:
            for b in auts:
                if a.compose(b).image.c not in seen:
                    raise AutomorphismInvalid("automorphism set is not closed under composition")
        auts.sort(key=lambda a: a.image.c != self.gen.c)
        for i, a in enumerate(auts):
            a.index = i
        self.automorphisms = auts

    def automorphism(self, index):
        self.require_galois()
        return self.automorphisms[index]

    def require_galois(self):
        if self.automorphisms is None:
            raise NotGalois(f"{self!r} has no verified automorphism group")

    def identity(self):
        self.require_galois()
        return self.automorphisms[0]

    def find_automorphisms(self, height=2, denominators=(1, 2)):
        """Bounded brute-force search for generator images; installs the group."""
        d = self.degree
        found = []
        roots = self.roots()
        coords_range = range(-height, height + 1)
        for den in denominators:
            for coords in itertools.product(coords_range, repeat=d):
                cand = NFElement(self, tuple(Fraction(c, den) for c in coords))
                if cand.c in [f.c for f in found]:
                    continue
                # cheap numerical filter: the image must land on some root
                val = cand.embed(self.embedding)
                if not any(val.overlaps(r) for r in roots):
                    continue
                if _is_root_of_minpoly(cand):
                    found.append(cand)
                if len(found) == d:
                    self.set_automorphisms(found)
                    return self.automorphisms
        raise SearchExhausted(f"found {len(found)} of {d} automorphisms with height <= {height}")

    def complex_conjugation(self):
        """The automorphism acting as complex conjugation in the distinguished embedding."""
        self.require_galois()
        theta = self.root(BASE_PREC)
        target = theta.conj()
        for a in self.automorphisms:
            if a.image.embed(self.embedding, BASE_PREC).overlaps(target):
                return a
        raise NotGalois("complex conjugation is not among the automorphisms")

    def sqrt_minus_one(self, height=3):
        """An element i with i^2 = -1 and positive imaginary part, if one is found."""
        if self.degree % 2:
            raise FieldLacksI(f"{self!r} has odd degree and cannot contain i")
        minus_one = self.rational(-1)
        cands = []
        for den in (1, 2, 3, 4):
            for coords in itertools.product(range(-height, height + 1), repeat=self.degree):
                if any(coords[1:]):
                    cands.append(NFElement(self, tuple(Fraction(c, den) for c in coords)))
        for u in cands:
            if u * u == minus_one:
                return u if u.embed(self.embedding).im > 0 else -u
        raise FieldLacksI(f"no square root of -1 of height <= {height} in {self!r}")

    def conjugate_coordinate_matrix(self, alpha):
        """Rows are coordinates of sigma(alpha) for sigma in the group order."""
        self.require_galois()
        return [list(s(alpha).c) for s in self.automorphisms]

    # -- integrality ----------------------------------------------------------
    def has_integral_generator(self):
        return all(c.denominator == 1 for c in self.minpoly)

    def power_basis_is_maximal(self):
        """True when Z[theta] is provably the full ring of integers (cheap tests only)."""
        if self.degree == 1:
            return True
        if not self.has_integral_generator():
            return False
        m = self.minpoly
        if self.degree == 2 and m[1] == 0:
            # x^2 - D with D squarefree and D != 1 mod 4
            D = int(-m[0])
            return _squarefree(D) and D % 4 != 1
        disc = discriminant(m)
        return disc != 0 and _squarefree(int(disc))

    # -- serialization ----------------------------------------------------------
    def to_text(self):
        lines = ["minpoly: " + " ".join(str(c) for c in self.minpoly)]
        if self.automorphisms is not None and self.degree > 1:
            lines.append("automorphisms: " + " | ".join(a.image.to_text() for a in self.automorphisms))
        if self.embedding:
            lines.append(f"embedding: {self.embedding}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text):
        fields = {}
        for line in text.strip().splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
        minpoly = [Fraction(tok) for tok in fields["minpoly"].split()]
        field = cls(minpoly, embedding=int(fields.get("embedding", 0)))
        if "automorphisms" in fields:
            field.set_automorphisms([s.strip() for s in fields["automorphisms"].split("|")])
        return field


def _is_root_of_minpoly(a):
    acc = a.field.zero
    for c in reversed(a.field.minpoly):
        acc = acc * a + c
    return acc.is_zero()


def _squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if p > 10 ** 6:
            return False  # unknown; be conservative
        p += 1
    return True


def discriminant(m):
    """Discriminant of a monic rational polynomial via the resultant with m'."""
    d = len(m) - 1
    res = resultant(list(m), _qderiv(list(m)))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * res


def resultant(a, b):
    """Resultant of two rational polynomials (Euclidean algorithm)."""
    a, b = _qtrim(a), _qtrim(b)
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        _, r = _qdivmod(a, b)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res *= b[-1] ** (da - dr)
        a, b = b, r
    return res * b[0] ** (len(a) - 1)


def format_poly(coeffs, var):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            terms.append(f"+ {mono}")
        elif mono and c == -1:
            terms.append(f"- {mono}")
        else:
            s = "-" if c < 0 else "+"
            body = str(abs(c))
            terms.append(f"{s} {body}*{mono}" if mono else f"{s} {body}")
    if not terms:
        return "0"
    out = " ".join(terms)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class NFElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return not any(self.c[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    # -- coercion -----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is self.field:
                return other
            if other.field == self.field:
                return NFElement(self.field, other.c)
            if other.field.degree == 1:
                return self.field.rational(other.c[0])
            if self.field.degree == 1:
                return None  # let the other operand lift us
            raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, NFElement):
            if other.field is self.field or other.field == self.field:
                return self.c == other.c
            if self.is_rational() and other.is_rational():
                return self.c[0] == other.c[0]
            return False
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o is None:
            return other + self
        return NFElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o is None:
            return -(other - self)
        return NFElement(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o is None:
            return other * self
        d = self.field.degree
        if d == 1:
            return NFElement(self.field, (self.c[0] * o.c[0],))
        if o.is_rational():
            k = o.c[0]
            return NFElement(self.field, tuple(a * k for a in self.c))
        if self.is_rational():
            k = self.c[0]
            return NFElement(self.field, tuple(a * k for a in o.c))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        m = self.field.minpoly
        for k in range(2 * d - 2, d - 1, -1):
            ck = prod[k]
            if ck:
                base = k - d
                for i in range(d):
                    if m[i]:
                        prod[base + i] -= ck * m[i]
        return NFElement(self.field, tuple(prod[:d]))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.rational(1 / self.c[0])
        g, u, _ = _qgcdex(list(self.c), list(self.field.minpoly))
        if len(g) != 1:
            raise DivisionByZero("element is a zero divisor (minpoly reducible?)")
        if len(u) > self.field.degree:
            u = _qdivmod(u, list(self.field.minpoly))[1]
        return self.field.element(list(u))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o is None:
            return other.field.rational(self.c[0]) / other
        if o.is_rational():
            if o.c[0] == 0:
                raise DivisionByZero("division by zero")
            k = o.c[0]
            return NFElement(self.field, tuple(a / k for a in self.c))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- linear algebra views ---------------------------------------------------
    def mult_matrix(self):
        """Matrix of x -> self*x on the power basis (column j = self*theta^j)."""
        d = self.field.degree
        cols = []
        x = self
        th = self.field.gen
        for _ in range(d):
            cols.append(x.c)
            x = x * th
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def trace(self):
        """Exact trace to Q (trace of the multiplication matrix)."""
        if self.field.degree == 1:
            return self.c[0]
        M = self.mult_matrix()
        return sum(M[i][i] for i in range(len(M)))

    def norm(self):
        """Exact norm to Q (determinant of the multiplication matrix)."""
        return det_fraction(self.mult_matrix())

    def charpoly(self):
        """Characteristic polynomial of multiplication-by-self, constant term first."""
        M = self.mult_matrix()
        d = len(M)
        # Faddeev-LeVerrier
        coeffs = [Fraction(0)] * (d + 1)
        coeffs[d] = Fraction(1)
        Mk = [[Fraction(0)] * d for _ in range(d)]
        ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        for k in range(1, d + 1):
            # Mk = M * (M_{k-1} + c_{d-k+1} I)
            prev = [[Mk[i][j] + coeffs[d - k + 1] * ident[i][j] for j in range(d)] for i in range(d)]
            Mk = [[sum(M[i][t] * prev[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
            coeffs[d - k] = -sum(Mk[i][i] for i in range(d)) / k
        return coeffs

    def is_integral(self):
        return all(c.denominator == 1 for c in self.charpoly())

    # -- embeddings -----------------------------------------------------------
    def embed(self, k=None, prec=BASE_PREC):
        """Ball for the image of this element under complex embedding ``k``."""
        field = self.field
        if field.degree == 1:
            return ComplexBall.exact(self.c[0], 0, prec)
        if k is None:
            k = field.embedding
        extra = max((abs(c.numerator).bit_length() + c.denominator.bit_length() for c in self.c), default=0)
        need = prec + extra + 16 * field.degree
        root = field.roots(1 << (need - 1).bit_length())[k]
        acc = ComplexBall(0, 0, 0, prec)
        for c in reversed(self.c):
            acc = acc * root + c
        return acc.with_prec(prec) if acc.prec != prec else acc

    def conjugates(self, prec=BASE_PREC):
        return [self.embed(k, prec) for k in range(self.field.degree)]

    def house(self, prec=BASE_PREC):
        """Ball containing the maximum modulus over all conjugates."""
        if self.field.degree == 1:
            return ComplexBall.exact(abs(self.c[0]), 0, prec)
        mags = [b.abs() for b in self.conjugates(prec)]
        lo = max(m.re - m.rad for m in mags)
        hi = max(m.re + m.rad for m in mags)
        return ComplexBall((lo + hi) / 2, 0, (hi - lo) / 2, prec)

    def house_upper(self, prec=64):
        if self.field.degree == 1:
            return abs(self.c[0])
        return max(b.mag_upper() for b in self.conjugates(prec))

    # -- text -----------------------------------------------------------------
    def to_text(self):
        """Coordinate-list form; a bare rational when the field is Q."""
        if self.field.degree == 1:
            return str(self.c[0])
        return "[" + ", ".join(str(x) for x in self.c) + "]"

    def to_expr(self, var="t"):
        """Expression in the generator symbol, parseable by the ratfun grammar."""
        if self.is_rational():
            return str(self.c[0])
        return "(" + format_poly(self.c, var) + ")"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"NFElement({self.to_expr()})"


class Automorphism:
    """Field automorphism theta -> image, applied via a precomputed matrix."""

    def __init__(self, field, image):
        self.field = field
        self.image = image
        self.index = None
        if not _is_root_of_minpoly(image):
            raise AutomorphismInvalid(f"minpoly({image.to_expr()}) != 0")
        d = field.degree
        cols = []
        x = field.one
        for _ in range(d):
            cols.append(x.c)
            x = x * image
        self._matrix = [[cols[j][i] for j in range(d)] for i in range(d)]

    def __call__(self, a):
        if not isinstance(a, NFElement):
            return self.field.element(a)
        if a.field.degree == 1 and self.field.degree > 1:
            return self.field.rational(a.c[0])
        M = self._matrix
        c = a.c
        d = len(c)
        return NFElement(self.field, tuple(sum(M[i][j] * c[j] for j in range(d) if c[j]) for i in range(d)))

    def compose(self, other):
        """self o other."""
        return Automorphism(self.field, self(other.image))

    def is_identity(self):
        return self.image == self.field.gen

    def inverse(self):
        for a in self.field.automorphisms or []:
            if self.compose(a).is_identity():
                return a
        raise NotGalois("inverse not found in the automorphism group")

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.field == other.field and self.image == other.image

    def __hash__(self):
        return hash(self.image.c)

    def __repr__(self):
        return f"Automorphism(t -> {self.image.to_expr()})"


def det_fraction(M):
    """Determinant of a square Fraction matrix by Gaussian elimination."""
    n = len(M)
    A = [list(map(Fraction, row)) for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] * inv
            if f:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
    return det


def solve_fraction(M, b):
    """Solve M x = b exactly (M square, nonsingular)."""
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def normal_basis_element(field, max_tries=200):
    """An integral element whose Galois conjugates form a Q-basis of the field."""
    field.require_galois()
    d = field.degree
    if d == 1:
        return field.one
    th = field.gen
    candidates = [th, 1 + th, sum((th ** i for i in range(d)), field.zero)]
    rng_coords = itertools.product(range(-2, 3), repeat=d)
    for coords in rng_coords:
        if len(candidates) >= max_tries:
            break
        candidates.append(field.element(list(coords)))
    for alpha in candidates:
        if alpha.is_zero():
            continue
        if det_fraction(field.conjugate_coordinate_matrix(alpha)) != 0:
            return make_integral(alpha)
    raise SearchExhausted(f"no normal basis element among {len(candidates)} candidates")


def is_normal_basis(alpha):
    field = alpha.field
    field.require_galois()
    return det_fraction(field.conjugate_coordinate_matrix(alpha)) != 0


def make_integral(alpha):
    """Multiply by the least positive integer making alpha an algebraic integer."""
    cp = alpha.charpoly()
    d = len(cp) - 1
    m = 1
    while True:
        # charpoly of m*alpha has coefficients m^(d-k) * c_k
        if all((c * m ** (d - k)).denominator == 1 for k, c in enumerate(cp)):
            return alpha * m
        m += 1


QQ = NumberField([-1, 1], name="Q")
