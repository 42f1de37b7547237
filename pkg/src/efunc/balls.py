"""Complex ball arithmetic on dyadic rationals.

A :class:`ComplexBall` is a disc ``{mid_re + i*mid_im + w : |w| <= rad}``.
Midpoints are dyadic :class:`~fractions.Fraction` values rounded to ``prec``
significant bits after every operation; the rounding error is added to the
radius, so every result encloses the exact image of its inputs.  Radii are
kept as short dyadic upper bounds.

Precision is a property of each ball (set at construction, propagated as
the max of the operands) -- there is no global context.
"""

from fractions import Fraction
from math import isqrt

RAD_BITS = 30
DEFAULT_PREC = 128

_ZERO = Fraction(0)


def upper_dyadic(x):
    """Smallest-ish dyadic >= x with RAD_BITS bits of mantissa (x >= 0)."""
    if x <= 0:
        if x < 0:
            raise ValueError("radius must be non-negative")
        return _ZERO
    n, d = x.numerator, x.denominator
    if d & (d - 1) == 0 and n.bit_length() <= RAD_BITS:
        return x
    s = RAD_BITS - (n.bit_length() - d.bit_length())
    if s >= 0:
        return Fraction(-((-n << s) // d), 1 << s)
    return Fraction(-((-n) // (d << -s)) << -s)


def lower_dyadic(x):
    """Dyadic <= x with RAD_BITS bits of mantissa (x >= 0)."""
    if x <= 0:
        return _ZERO
    n, d = x.numerator, x.denominator
    s = RAD_BITS - (n.bit_length() - d.bit_length())
    if s >= 0:
        return Fraction((n << s) // d, 1 << s)
    return Fraction((n // (d << -s)) << -s)


def round_dyadic(x, prec):
    """Round ``x`` to ``prec`` significant bits; return (value, error bound)."""
    n, d = x.numerator, x.denominator
    if n == 0:
        return _ZERO, _ZERO
    if d & (d - 1) == 0 and abs(n).bit_length() <= prec:
        return x, _ZERO
    s = prec - (abs(n).bit_length() - d.bit_length())
    if s >= 0:
        m = ((n << (s + 1)) + d) // (2 * d)
        return Fraction(m, 1 << s), Fraction(1, 1 << (s + 1))
    q = d << (-s)
    m = (2 * n + q) // (2 * q)
    return Fraction(m << (-s)), Fraction(1 << (-s - 1))


def sqrt_bounds(x, bits=64):
    """Return (lo, hi) Fractions with lo <= sqrt(x) <= hi, relative gap ~2^-bits."""
    if x <= 0:
        return _ZERO, _ZERO
    n, d = x.numerator, x.denominator
    k = max(0, bits - (n.bit_length() - d.bit_length()) // 2)
    # sqrt(n/d) = sqrt(n*d*4^k) / (d*2^k)
    r = isqrt(n * d << (2 * k))
    den = d << k
    lo = Fraction(r, den)
    hi = lo if r * r == n * d << (2 * k) else Fraction(r + 1, den)
    return lo, hi


class ComplexBall:
    __slots__ = ("re", "im", "rad", "prec")

    def __init__(self, re=0, im=0, rad=0, prec=DEFAULT_PREC):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self.rad = upper_dyadic(Fraction(rad))
        self.prec = prec

    # -- construction ---------------------------------------------------
    @classmethod
    def exact(cls, re, im=0, prec=DEFAULT_PREC):
        """Ball around an exact complex rational, rounded to ``prec`` bits."""
        r, e1 = round_dyadic(Fraction(re), prec)
        i, e2 = round_dyadic(Fraction(im), prec)
        return cls(r, i, e1 + e2, prec)

    @classmethod
    def _make(cls, re, im, rad, prec):
        r, e1 = round_dyadic(re, prec)
        i, e2 = round_dyadic(im, prec)
        b = object.__new__(cls)
        b.re, b.im, b.rad, b.prec = r, i, upper_dyadic(rad + e1 + e2), prec
        return b

    def with_prec(self, prec):
        return ComplexBall._make(self.re, self.im, self.rad, prec)

    def add_error(self, err):
        b = object.__new__(ComplexBall)
        b.re, b.im, b.prec = self.re, self.im, self.prec
        b.rad = upper_dyadic(self.rad + Fraction(err))
        return b

    # -- magnitudes -------------------------------------------------------
    def _mid_abs_bounds(self):
        return sqrt_bounds(self.re * self.re + self.im * self.im, max(64, self.prec // 2))

    def mag_upper(self):
        """Fraction >= |z| for every z in the ball."""
        return upper_dyadic(self._mid_abs_bounds()[1] + self.rad)

    def mag_lower(self):
        """Fraction <= |z| for every z in the ball (0 if the ball meets 0)."""
        lo = self._mid_abs_bounds()[0] - self.rad
        return lower_dyadic(lo) if lo > 0 else _ZERO

    def abs(self):
        """Real ball containing |z| for all z in the ball."""
        lo, hi = self._mid_abs_bounds()
        return ComplexBall._make((lo + hi) / 2, _ZERO, (hi - lo) / 2 + self.rad, self.prec)

    # -- predicates -------------------------------------------------------
    def contains_zero(self):
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def excludes_zero(self):
        return not self.contains_zero()

    def contains(self, re, im=0):
        dr, di = Fraction(re) - self.re, Fraction(im) - self.im
        return dr * dr + di * di <= self.rad * self.rad

    def overlaps(self, other):
        dr, di = self.re - other.re, self.im - other.im
        s = self.rad + other.rad
        return dr * dr + di * di <= s * s

    def is_exact(self):
        return self.rad == 0

    def real_interval(self):
        """Bounds on the real part; the value is assumed real by the caller."""
        return self.re - self.rad, self.re + self.rad

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x, prec):
        if isinstance(x, ComplexBall):
            return x
        if isinstance(x, complex):
            return ComplexBall.exact(Fraction(x.real), Fraction(x.imag), prec)
        return ComplexBall.exact(Fraction(x), 0, prec)

    def __neg__(self):
        b = object.__new__(ComplexBall)
        b.re, b.im, b.rad, b.prec = -self.re, -self.im, self.rad, self.prec
        return b

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ComplexBall._make(self.re + other, self.im, self.rad, self.prec)
        o = self._coerce(other, self.prec)
        return ComplexBall._make(self.re + o.re, self.im + o.im, self.rad + o.rad, max(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other, self.prec))

    def __rsub__(self, other):
        return self._coerce(other, self.prec) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return ComplexBall._make(self.re * c, self.im * c, self.rad * abs(c), self.prec)
        o = self._coerce(other, self.prec)
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        a = self._mid_abs_bounds()[1]
        b = o._mid_abs_bounds()[1]
        rad = a * o.rad + b * self.rad + self.rad * o.rad
        return ComplexBall._make(re, im, rad, max(self.prec, o.prec))

    __rmul__ = __mul__

    def inv(self):
        m2 = self.re * self.re + self.im * self.im
        if m2 <= self.rad * self.rad:
            raise ZeroDivisionError("ball contains zero")
        lo = self._mid_abs_bounds()[0]
        if lo <= self.rad:
            raise ZeroDivisionError("ball too close to zero")
        # |1/z - 1/m| <= r / (|m| (|m| - r))
        rad = self.rad / (lo * (lo - self.rad))
        return ComplexBall._make(self.re / m2, -self.im / m2, rad, self.prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * self._coerce(other, self.prec).inv()

    def __rtruediv__(self, other):
        return self._coerce(other, self.prec) * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("non-negative integer exponents only")
        result = ComplexBall(1, 0, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self):
        b = object.__new__(ComplexBall)
        b.re, b.im, b.rad, b.prec = self.re, -self.im, self.rad, self.prec
        return b

    # -- formatting ---------------------------------------------------------
    def __float__(self):
        return float(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexBall({self.format(20)})"

    def format(self, digits=20):
        """Decimal midpoint with ``digits`` significant digits and a ``± r`` suffix."""
        re = format_decimal(self.re, digits)
        if self.im != 0:
            sign = "+" if self.im > 0 else "-"
            mid = f"{re} {sign} {format_decimal(abs(self.im), digits)}*I"
        else:
            mid = re
        return f"{mid} ± {format_radius(self.rad)}"

    __str__ = format

    def machine(self):
        """Machine-readable dump with exact binary exponents."""
        def dy(x):
            n, d = x.numerator, x.denominator
            e = d.bit_length() - 1
            return f"{n}*2^-{e}" if e else f"{n}"
        return f"mid_re={dy(self.re)} mid_im={dy(self.im)} rad={dy(self.rad)} prec={self.prec}"


def _floor_log10(x):
    n, d = x.numerator, x.denominator
    e = len(str(n)) - len(str(d))
    return e - 1 if Fraction(10) ** e > x else e


def format_radius(r):
    """Three significant digits, rounded up."""
    if r == 0:
        return "0"
    e = _floor_log10(r)
    scaled = r * Fraction(10) ** (2 - e)
    m = -((-scaled.numerator) // scaled.denominator)
    if m >= 1000:
        m, e = -(-m // 10), e + 1
    return f"{m // 100}.{m % 100:02d}e{e:+d}"


def format_decimal(x, digits):
    """Decimal string of a Fraction with ``digits`` significant digits."""
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    n, d = x.numerator, x.denominator
    e10 = _floor_log10(x)
    s = digits - 1 - e10
    m = (n * 10 ** s * 2 + d) // (2 * d) if s >= 0 else (n * 2 + d * 10 ** (-s)) // (2 * d * 10 ** (-s))
    txt = str(m)
    if len(txt) > digits:
        txt = txt[:digits]
        e10 += 1
    point = e10 + 1
    if e10 < -6 or e10 > max(digits, 21):
        mant = txt[0] + ("." + txt[1:].rstrip("0") if txt[1:].rstrip("0") else "")
        return f"{sign}{mant}e{e10:+d}"
    if 0 < point <= len(txt):
        out = txt[:point] + ("." + txt[point:] if point < len(txt) else "")
    elif point > len(txt):
        out = txt + "0" * (point - len(txt))
    else:
        out = "0." + "0" * (-point) + txt
    return sign + out
