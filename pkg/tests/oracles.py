"""Reference computations that share no code with the package.

Everything here works from closed forms or textbook series in plain
Fractions (or mpmath where a third opinion is useful), so agreement with
the package is evidence rather than a tautology.
"""

from fractions import Fraction
from math import factorial

import mpmath


# -- coefficient streams a_n of f = sum a_n z^n / n! ---------------------------

def exp_stream(n):
    return [1] * n


def j0_stream(n):
    """J0 = sum_k (-1)^k (z/2)^(2k) / k!^2, so a_(2k) = (-1)^k (2k)! / (4^k k!^2)."""
    out = []
    for m in range(n):
        if m % 2:
            out.append(Fraction(0))
        else:
            k = m // 2
            out.append(Fraction((-1) ** k * factorial(2 * k), 4 ** k * factorial(k) ** 2))
    return out


def pascal(n):
    """Rows 0..n-1 of Pascal's triangle built by addition only."""
    rows = [[1]]
    for _ in range(1, n):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return rows


def apq_stream(p, q, n):
    """sum_k C(n,k)^p C(n+k,n)^q from a Pascal table."""
    rows = pascal(2 * n + 1)
    return [sum(rows[m][k] ** p * rows[m + k][m] ** q for k in range(m + 1)) for m in range(n)]


def stream_times_poly(a, d):
    """Stream of D(z) f(z): c_n = sum_k d_k n!/(n-k)! a_(n-k), for a polynomial d (z^k coefficients)."""
    out = []
    for n in range(len(a)):
        acc = 0
        for k, dk in enumerate(d):
            if dk and k <= n:
                acc += dk * (factorial(n) // factorial(n - k)) * a[n - k]
        out.append(acc)
    return out


def stream_product(a, b):
    """Binomial convolution c_n = sum_k C(n,k) a_k b_(n-k)."""
    rows = pascal(len(a))
    return [sum(rows[n][k] * a[k] * b[n - k] for k in range(n + 1)) for n in range(len(a))]


# -- numbers -----------------------------------------------------------------

def e_interval(digits):
    """[lo, hi] around e from sum 1/k! with the remainder bound 1/(K! K)."""
    s, term, k = Fraction(0), Fraction(1), 0
    eps = Fraction(1, 10 ** (digits + 5))
    while True:
        s += term
        k += 1
        term /= k
        # remainder sum_{j>=k} 1/j! < term * (k+1)/k
        rem = term * Fraction(k + 1, k)
        if rem < eps:
            return s, s + rem


def j0_at_1_interval(digits):
    """Alternating series for J0(1): consecutive partial sums bracket the value."""
    s, k = Fraction(0), 0
    eps = Fraction(1, 10 ** (digits + 5))
    while True:
        t = Fraction((-1) ** k, 4 ** k * factorial(k) ** 2)
        s_next = s + t
        nxt = Fraction(1, 4 ** (k + 1) * factorial(k + 1) ** 2)
        if nxt < eps and k > 0:
            lo, hi = sorted((s_next, s_next + (-1) ** (k + 1) * nxt))
            return lo, hi
        s, k = s_next, k + 1


def mp_value(name, dps):
    with mpmath.workdps(dps + 10):
        if name == "e":
            return mpmath.e
        if name == "j0(1)":
            return mpmath.besselj(0, 1)
        raise KeyError(name)


def a22_at_1_interval(digits):
    """sum A_n/n! for the Apery-type numbers with the crude tail bound A_n <= 34^(n+1)."""
    eps = Fraction(1, 10 ** (digits + 5))
    n = 0
    rows = pascal(4)
    s = Fraction(0)
    while True:
        if len(rows) < 2 * n + 2:
            rows = pascal(4 * n + 8)
        a = sum(rows[n][k] ** 2 * rows[n + k][n] ** 2 for k in range(n + 1))
        s += Fraction(a, factorial(n))
        n += 1
        # tail sum_{m>=n} 34^(m+1)/m! <= 2 * 34^(n+1)/n! once n >= 68
        if n >= 68:
            tail = Fraction(2 * 34 ** (n + 1), factorial(n))
            if tail < eps:
                return s, s + tail


# -- continued fractions --------------------------------------------------------

def e_partial_quotients(k):
    """[2; 1, 2, 1, 1, 4, 1, 1, 6, ...]."""
    out = [2]
    j = 1
    while len(out) < k:
        out.extend([1, 2 * j, 1])
        j += 1
    return out[:k]


def convergents(quotients):
    p0, q0, p1, q1 = 1, 0, quotients[0], 1
    out = [(p1, q1)]
    for a in quotients[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def cf_of_fraction(x):
    x = Fraction(x)
    out = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        r = x - a
        if r == 0:
            return out
        x = 1 / r


# -- scans ------------------------------------------------------------------------

def brute_liouville(lo, hi, kappa, q_max):
    """min over q of q^kappa |q xi - p| using both ends of an exact interval; returns (q, value at lo, value at hi)."""
    best = None
    for q in range(2, q_max + 1):
        vals = []
        for x in (lo, hi):
            p = (2 * q * x + 1) // 2
            vals.append(Fraction(q) ** kappa * abs(q * x - p))
        v = max(vals)
        if best is None or v < best[1]:
            best = (q, v, min(vals))
    return best


def brute_form_min(xi_lo, xi_hi, H):
    """Exhaustive min of max(|a|,|b|) |a + b xi| over (a, b) != 0 with |a|,|b| <= H, up to sign.

    Works with float screening and exact interval recheck of everything
    close to the minimum.  Returns (min upper bound, sorted argmin list).
    """
    xi = float((xi_lo + xi_hi) / 2)
    scores = []
    for b in range(0, H + 1):
        for a in range(-H, H + 1):
            if b == 0 and a <= 0:
                continue
            h = max(abs(a), abs(b))
            scores.append((h * abs(a + b * xi), a, b))
    fmin = min(s for s, _, _ in scores)
    close = [(a, b) for s, a, b in scores if s <= fmin * (1 + 1e-6) + 1e-12]
    exact = []
    for a, b in close:
        h = max(abs(a), abs(b))
        lo = min(abs(a + b * xi_lo), abs(a + b * xi_hi)) * h
        hi = max(abs(a + b * xi_lo), abs(a + b * xi_hi)) * h
        exact.append((lo, hi, a, b))
    best_hi = min(hi for _, hi, _, _ in exact)
    arg = sorted((a, b) for lo, _, a, b in exact if lo <= best_hi)
    return best_hi, arg


def isolate_sqrt2_roots(bits=60):
    """Bisection brackets for the two roots of x^2 - 2."""
    out = []
    for lo, hi in ((Fraction(1), Fraction(2)), (Fraction(-2), Fraction(-1))):
        f_lo = lo * lo - 2
        for _ in range(bits):
            mid = (lo + hi) / 2
            if (mid * mid - 2 > 0) == (f_lo > 0):
                lo, f_lo = mid, mid * mid - 2
            else:
                hi = mid
        out.append((min(lo, hi), max(lo, hi)))
    return out
