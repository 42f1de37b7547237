"""Polynomials, rational functions and matrices over a number field.

Everything here lives in a single ambient :class:`~efunc.exactmath.NumberField`.
Polynomials are dense (coefficient tuples, constant term first).
"""

import re
from fractions import Fraction

from .errors import DivisionByZeroPolynomial, FieldMismatch, NotCoprime, RootsNotInField
from .exactmath import NFElement, QQ


def _common_field(a, b):
    if a is b or a == b:
        return a
    if a.degree == 1:
        return b
    if b.degree == 1:
        return a
    raise FieldMismatch(f"{a!r} and {b!r} differ")


class Poly:
    """Dense univariate polynomial in z over a number field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        cs = [field.element(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, coeffs):
        p = object.__new__(cls)
        p.field = field
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def z(cls, field=QQ):
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def linear_root(cls, alpha):
        """The monic polynomial z - alpha."""
        return cls(alpha.field, [-alpha, 1])

    @classmethod
    def from_roots(cls, roots, field=None):
        field = field or (roots[0].field if roots else QQ)
        p = cls.const(field, 1)
        for r in roots:
            p = p * cls(field, [-field.element(r), 1])
        return p

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = lc.inverse()
        return Poly._raw(self.field, [c * inv for c in self.coeffs])

    def is_rational(self):
        return all(c.is_rational() for c in self.coeffs)

    # -- coercion -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            f = _common_field(self.field, other.field)
            if f is not self.field:
                return Poly(f, self.coeffs), Poly(f, other.coeffs)
            if other.field is not f:
                return self, Poly(f, other.coeffs)
            return self, other
        if isinstance(other, (int, Fraction, NFElement)):
            if isinstance(other, NFElement):
                f = _common_field(self.field, other.field)
                me = self if f is self.field else Poly(f, self.coeffs)
                return me, Poly(f, [other])
            return self, Poly(self.field, [other])
        return None, None

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(tuple(hash(c) for c in self.coeffs))

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly._raw(a.field, [a.coeff(i) + b.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if not a.coeffs or not b.coeffs:
            return Poly._raw(a.field, [])
        if len(b.coeffs) == 1:
            k = b.coeffs[0]
            return Poly._raw(a.field, [c * k for c in a.coeffs])
        out = [a.field.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly._raw(a.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if not b.coeffs:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        rem = list(a.coeffs)
        db = len(b.coeffs) - 1
        inv = b.coeffs[-1].inverse()
        q = [a.field.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            if c:
                q[k] = c
                for i, bi in enumerate(b.coeffs):
                    if bi:
                        rem[k + i] = rem[k + i] - c * bi
        return Poly._raw(a.field, q), Poly._raw(a.field, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    # -- calculus and evaluation ---------------------------------------------------
    def derivative(self):
        return Poly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a field element, a rational or a ComplexBall."""
        if isinstance(x, (int, Fraction)):
            x = self.field.element(x)
        if isinstance(x, NFElement):
            acc = self.field.zero
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c.embed(prec=getattr(x, "prec", 128))
        return acc

    def embed(self, k=None, prec=128):
        """Coefficients as balls under complex embedding ``k``."""
        return [c.embed(k, prec) for c in self.coeffs]

    def map_coeffs(self, fn):
        return Poly._raw(self.field, [fn(c) for c in self.coeffs])

    def over(self, field):
        """The same polynomial with coefficients coerced into ``field``."""
        if field is self.field:
            return self
        return Poly(field, self.coeffs)

    def scale_argument(self, alpha):
        """p(alpha*z)."""
        alpha = self.field.element(alpha)
        out, pw = [], self.field.one
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * alpha
        return Poly._raw(self.field, out)

    def shift_power(self, k):
        """z^k * p."""
        return Poly._raw(self.field, [self.field.zero] * k + list(self.coeffs))

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def multiplicity(self, alpha):
        """Order of vanishing at alpha (0 if p(alpha) != 0)."""
        if not self.coeffs:
            raise ValueError("the zero polynomial vanishes to infinite order")
        lin = Poly.linear_root(self.field.element(alpha))
        p, k = self, 0
        while True:
            q, r = divmod(p, lin)
            if r:
                return k
            p, k = q, k + 1

    # -- text -----------------------------------------------------------------
    def to_expr(self, var="z"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if c.is_rational():
                q = c.c[0]
                sign = "-" if q < 0 else "+"
                q = abs(q)
                if mono:
                    body = mono if q == 1 else f"{q}*{mono}"
                else:
                    body = str(q)
            else:
                sign = "+"
                body = c.to_expr() + (f"*{mono}" if mono else "")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"Poly({self.to_expr()})"


def poly_gcd(a, b):
    return poly_gcd_ext(a, b)[0]


def poly_gcd_ext(a, b):
    """Return (g, u, v) with u*a + v*b = g and g monic (g = 0 iff a = b = 0)."""
    a, b = a._coerce(b)
    field = a.field
    zero, one = Poly._raw(field, []), Poly.const(field, 1)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return zero, zero, zero
    inv = r0.lead().inverse()
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a, b):
    if not a or not b:
        return Poly._raw(a.field, [])
    return (a * b // poly_gcd(a, b)).monic()


def poly_roots_in_field(p):
    """All roots of p in its coefficient field, with multiplicity.

    Roots are located numerically in each embedding, lifted to field elements
    through the conjugate Vandermonde system, and then checked exactly.  Any
    root that does not lie in the field raises :class:`RootsNotInField`.
    """
    field = p.field
    if p.degree < 1:
        return []
    roots = []
    rest = p.monic()
    while rest.coeffs and not rest.coeffs[0]:
        roots.append(field.zero)
        rest = Poly._raw(field, rest.coeffs[1:])
    if rest.degree < 1:
        return roots
    if field.degree == 1 or rest.is_rational():
        cands = _rational_roots(rest)
        if field.degree == 1 or len(cands) == rest.degree:
            for r in cands:
                while True:
                    q, rem = divmod(rest, Poly(field, [-r, 1]))
                    if rem:
                        break
                    roots.append(field.element(r))
                    rest = q
            if rest.degree >= 1 and field.degree == 1:
                raise RootsNotInField(f"{rest.to_expr()} has roots outside Q")
            if rest.degree < 1:
                return roots
    found = _numeric_field_roots(rest)
    for r in found:
        while True:
            q, rem = divmod(rest, Poly.linear_root(r))
            if rem:
                break
            roots.append(r)
            rest = q
    if rest.degree >= 1:
        raise RootsNotInField(f"{rest.to_expr()} has roots outside {field!r}")
    return roots


def _rational_roots(p):
    """Rational roots of a polynomial with rational coefficients (rational root test)."""
    from math import gcd, isqrt

    qs = [c.c[0] for c in p.coeffs]
    den = 1
    for q in qs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) < 2:
        return []
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = set()
        for i in range(1, isqrt(n) + 1):
            if n % i == 0:
                out.update((i, n // i))
        return out

    if a0 > 10 ** 12 or an > 10 ** 12:
        return []
    out = []
    for num in divisors(a0):
        for dd in divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, dd)
                if r in out:
                    continue
                if sum(c * r ** i for i, c in enumerate(qs)) == 0:
                    out.append(r)
    return out


def _numeric_field_roots(p):
    import mpmath

    field = p.field
    d = field.degree
    prec = 256
    for _ in range(4):
        dps = prec // 3
        per_embedding = []
        with mpmath.workdps(dps):
            for k in range(d):
                cs = [c.embed(k, prec) for c in reversed(p.coeffs)]
                mcs = [mpmath.mpc(mpmath.mpf(b.re.numerator) / b.re.denominator,
                                  mpmath.mpf(b.im.numerator) / b.im.denominator) for b in cs]
                try:
                    per_embedding.append(mpmath.polyroots(mcs, maxsteps=400, extraprec=dps))
                except mpmath.libmp.NoConvergence:
                    per_embedding.append(None)
        if any(r is None for r in per_embedding):
            prec *= 2
            continue
        # candidate root in K: coordinates solve V c = (r_k) with V the embedded power basis
        base = [field.gen.embed(k, prec) for k in range(d)]
        results = []
        for r0 in per_embedding[0]:
            # match conjugates: pick, in each other embedding, every root; use the real
            # coordinates recovered from a full Vandermonde solve and verify exactly.
            for combo in _combos(per_embedding, r0):
                coords = _solve_vandermonde(base, combo, dps)
                if coords is None:
                    continue
                cand = field.element([_rationalize(x) for x in coords])
                if p(cand).is_zero() and cand not in results:
                    results.append(cand)
                    break
        if results:
            return results
        prec *= 2
    return []


def _combos(per_embedding, r0, limit=4096):
    import itertools

    others = per_embedding[1:]
    count = 0
    for tail in itertools.product(*others):
        yield (r0,) + tail
        count += 1
        if count >= limit:
            return


def _solve_vandermonde(base, values, dps):
    import mpmath

    d = len(base)
    with mpmath.workdps(dps):
        rows = []
        for k in range(d):
            t = mpmath.mpc(mpmath.mpf(base[k].re.numerator) / base[k].re.denominator,
                           mpmath.mpf(base[k].im.numerator) / base[k].im.denominator)
            rows.append([t ** j for j in range(d)])
        try:
            sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(list(values)))
        except ZeroDivisionError:
            return None
        out = []
        for x in sol:
            if abs(mpmath.im(x)) > mpmath.mpf(10) ** (-dps // 3):
                return None
            out.append(mpmath.re(x))
        return out


def _rationalize(x, max_den=10 ** 12):
    import mpmath

    p, q = mpmath.libmp.to_rational(mpmath.mpf(x)._mpf_)
    return Fraction(int(p), int(q)).limit_denominator(max_den)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """num/den in lowest terms with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Poly):
            raise TypeError("RatFun numerator must be a Poly")
        if den is None:
            den = Poly.const(num.field, 1)
        num, den = num._coerce(den)
        if not den:
            raise DivisionByZeroPolynomial("zero denominator")
        if not _reduced:
            if not num:
                den = Poly.const(num.field, 1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.lead()
            if lc != 1:
                inv = lc.inverse()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c))

    @classmethod
    def zero(cls, field):
        return cls(Poly._raw(field, []))

    @classmethod
    def one(cls, field):
        return cls.const(field, 1)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.den.degree == 0 and self.num.degree <= 0

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        if isinstance(other, (int, Fraction, NFElement)):
            return RatFun(Poly.const(self.field if not isinstance(other, NFElement)
                                     else _common_field(self.field, other.field), other))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFun.zero(_common_field(self.field, o.field))
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZeroPolynomial("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n, _reduced=True)

    def derivative(self):
        return RatFun(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if isinstance(d, NFElement) and d.is_zero():
            raise DivisionByZeroPolynomial("evaluation at a pole")
        return self.num(x) / d

    def map_coeffs(self, fn):
        return RatFun(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def over(self, field):
        if field is self.field:
            return self
        return RatFun(self.num.over(field), self.den.over(field), _reduced=True)

    def scale_argument(self, alpha):
        return RatFun(self.num.scale_argument(alpha), self.den.scale_argument(alpha))

    def pole_order(self, alpha):
        return self.den.multiplicity(alpha)

    def to_expr(self):
        if self.den.degree == 0:
            return self.num.to_expr()
        num, den = self.num.to_expr(), self.den.to_expr()
        if (" + " in num or " - " in num) and not _wrapped(num):
            num = f"({num})"
        if not re.fullmatch(r"z(\^\d+)?", den):
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"RatFun({self.to_expr()})"


def _wrapped(s):
    """True if s is a single parenthesized group."""
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(s) - 1:
            return False
    return True


def pole_order(r, alpha):
    """Multiplicity of (z - alpha) in the reduced denominator of r."""
    return r.den.multiplicity(alpha)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Rectangular matrix of :class:`RatFun` entries."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        self.field = field
        rows = []
        for row in entries:
            rows.append(tuple(_to_ratfun(field, x) for x in row))
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows have different lengths")
        self.entries = tuple(rows)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, n, m=None):
        return cls(field, [[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, field, items):
        n = len(items)
        return cls(field, [[items[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        return RatMatrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RatMatrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return RatMatrix(self.field, [[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for r in self.entries:
                row = []
                for j in range(other.cols):
                    acc = RatFun.zero(self.field)
                    for k, a in enumerate(r):
                        if a:
                            b = other.entries[k][j]
                            if b:
                                acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return RatMatrix(self.field, out)
        return RatMatrix(self.field, [[a * other for a in r] for r in self.entries])

    def __rmul__(self, other):
        return RatMatrix(self.field, [[other * a for a in r] for r in self.entries])

    def transpose(self):
        return RatMatrix(self.field, [list(c) for c in zip(*self.entries)])

    def derivative(self):
        return RatMatrix(self.field, [[a.derivative() for a in r] for r in self.entries])

    def map_coeffs(self, fn):
        return RatMatrix(self.field, [[a.map_coeffs(fn) for a in r] for r in self.entries])

    def over(self, field):
        if field is self.field:
            return self
        return RatMatrix(field, [[a.over(field) for a in r] for r in self.entries])

    def scale_argument(self, alpha):
        return RatMatrix(self.field, [[a.scale_argument(alpha) for a in r] for r in self.entries])

    def is_polynomial(self):
        return all(a.is_polynomial() for r in self.entries for a in r)

    def common_denominator(self):
        """Monic lcm of all entry denominators."""
        L = Poly.const(self.field, 1)
        for r in self.entries:
            for a in r:
                if a.den.degree > 0:
                    L = poly_lcm(L, a.den)
        return L

    def denominator_is_power_of_z(self):
        L = self.common_denominator()
        return all(not c for c in L.coeffs[:-1])

    def det(self):
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        A = [list(r) for r in self.entries]
        det = RatFun.one(self.field)
        for col in range(n):
            piv = None
            for r in range(col, n):
                if A[r][col]:
                    if piv is None or A[r][col].num.degree + A[r][col].den.degree < \
                            A[piv][col].num.degree + A[piv][col].den.degree:
                        piv = r
            if piv is None:
                return RatFun.zero(self.field)
            if piv != col:
                A[col], A[piv] = A[piv], A[col]
                det = -det
            p = A[col][col]
            det = det * p
            inv = p.inverse()
            for r in range(col + 1, n):
                if A[r][col]:
                    f = A[r][col] * inv
                    A[r] = [x - f * y if c >= col else x for c, (x, y) in enumerate(zip(A[r], A[col]))]
        return det

    def inverse(self):
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        one, zero = RatFun.one(self.field), RatFun.zero(self.field)
        A = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.entries)]
        for col in range(n):
            piv = next((r for r in range(col, n) if A[r][col]), None)
            if piv is None:
                raise DivisionByZeroPolynomial("matrix is singular")
            A[col], A[piv] = A[piv], A[col]
            inv = A[col][col].inverse()
            A[col] = [x * inv for x in A[col]]
            for r in range(n):
                if r != col and A[r][col]:
                    f = A[r][col]
                    A[r] = [x - f * y for x, y in zip(A[r], A[col])]
        return RatMatrix(self.field, [r[n:] for r in A])

    def apply(self, vec):
        """Matrix times a vector of RatFun / Poly."""
        return [sum((a * _to_ratfun(self.field, v) for a, v in zip(r, vec)), RatFun.zero(self.field))
                for r in self.entries]

    def to_rows(self):
        return [[a.to_expr() for a in r] for r in self.entries]

    def __str__(self):
        return "\n".join(" | ".join(r) for r in self.to_rows())

    def __repr__(self):
        return f"RatMatrix({self.to_rows()})"


def _to_ratfun(field, x):
    if isinstance(x, RatFun):
        if x.field is field or x.field == field:
            return x
        if x.field.degree == 1:
            return x.over(field)
        raise FieldMismatch(f"entry over {x.field!r}, matrix over {field!r}")
    if isinstance(x, Poly):
        return RatFun(x if x.field is field else Poly(field, x.coeffs))
    if isinstance(x, str):
        from .exprparse import parse_ratfun
        return parse_ratfun(x, field)
    return RatFun.const(field, field.element(x))


def unimodular_complete(row):
    """Square polynomial matrix with first row ``row`` and determinant exactly 1.

    Induction on the length: with g the gcd of all but the last entry, complete
    row/g recursively, then glue in the last entry through u*g + v*P_N = 1.
    """
    row = list(row)
    N = len(row)
    if N == 0:
        raise ValueError("empty row")
    field = row[0].field
    for p in row[1:]:
        field = _common_field(field, p.field)
    row = [p if p.field is field else Poly(field, p.coeffs) for p in row]
    if N == 1:
        if row[0] != 1:
            raise NotCoprime("a 1x1 unimodular completion exists only for the row (1)")
        return RatMatrix(field, [[row[0]]])
    g = Poly._raw(field, [])
    for p in row:
        g = poly_gcd(g, p)
    if g != 1:
        raise NotCoprime(f"entries share the factor {g.to_expr()}")
    return RatMatrix(field, _complete(row))


def _complete(row):
    N = len(row)
    field = row[0].field
    one, zero = Poly.const(field, 1), Poly._raw(field, [])
    head, last = row[:-1], row[-1]
    if all(not p for p in head):
        # row is (0, ..., 0, c) with c a non-zero constant
        c = last.coeffs[0]
        sign = 1 if N % 2 else -1
        out = [list(row)]
        for i in range(1, N):
            r = [zero] * N
            r[i - 1] = Poly.const(field, c.inverse() * sign) if i == 1 else one
            out.append(r)
        return out
    if N == 2:
        g = head[0]
        prim = [one]
        sub = [[one]]
    else:
        g = zero
        for p in head:
            g = poly_gcd(g, p)
        prim = [p // g for p in head]
        sub = _complete(prim)
    h, u, v = poly_gcd_ext(g, last)
    if h != 1:
        raise NotCoprime("entries are not coprime")
    out = [[g * p for p in prim] + [last]]
    for r in sub[1:]:
        out.append(list(r) + [zero])
    out.append([-(v * p) for p in prim] + [u])
    return out


def poly_det(rows):
    """Exact determinant of a square matrix of Poly (as a Poly)."""
    field = rows[0][0].field
    d = RatMatrix(field, rows).det()
    if not d.is_polynomial():
        raise ValueError("determinant of a polynomial matrix must be a polynomial")
    return d.num
