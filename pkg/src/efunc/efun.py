"""E-functions as exact coefficient streams.

A function ``f = sum a_n z^n / n!`` is stored through its coefficients
``a_n`` (elements of the ambient field).  Streams are lazy and memoized;
extension is serialized by a per-stream lock while reads of an existing
prefix need no lock.

A :class:`DifferentialSystem` ``f' = A f`` is turned into a linear
recurrence on the ``a_n``: with ``L`` the monic lcm of the denominators of
``A`` and ``P = L*A``, comparing coefficients of ``z^n`` in ``L f' = P f``
and multiplying by a factorial gives a relation with integer-polynomial
coefficients that is solved forward.  Finitely many indices where the
leading matrix is singular (regular singular point at 0) are handled by
solving a small linear system together with the seeds.
"""

import itertools
import math
import threading
from fractions import Fraction

from .errors import (
    FieldMismatch,
    InconsistentSeeds,
    NotNormalBasis,
    RationalityViolation,
    SystemRequired,
    UnderdeterminedSeeds,
    ZeroIsIrregular,
)
from .exactmath import QQ, NFElement, det_fraction, solve_fraction
from .ratfun import Poly, RatFun, RatMatrix, poly_roots_in_field


def falling(n, k):
    """n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


# ---------------------------------------------------------------------------
# certificates carried along with streams
# ---------------------------------------------------------------------------

class CoeffBound:
    """Rigorous bound |sigma(a_n)| <= C (n+1)^k rho^n for every embedding and n."""

    __slots__ = ("C", "k", "rho")

    def __init__(self, C, k=0, rho=1):
        self.C = Fraction(C)
        self.k = int(k)
        self.rho = max(Fraction(rho), Fraction(1))

    def at(self, n):
        return self.C * (n + 1) ** self.k * self.rho ** n

    def __add__(self, other):
        return CoeffBound(self.C + other.C, max(self.k, other.k), max(self.rho, other.rho))

    def scaled(self, c):
        return CoeffBound(self.C * c, self.k, self.rho)

    def convolve(self, other):
        return CoeffBound(self.C * other.C, self.k + other.k, self.rho + other.rho)

    def shifted(self, k):
        # a'_n = ff(n,k) a_{n-k}; valid because rho >= 1
        return CoeffBound(self.C, self.k + k, self.rho)

    def derived(self):
        return CoeffBound(self.C * 2 ** self.k * self.rho, self.k, self.rho)

    def argument_scaled(self, h):
        return CoeffBound(self.C, self.k, self.rho * h)

    def __repr__(self):
        return f"CoeffBound(C={self.C}, k={self.k}, rho={self.rho})"


class HyperCert:
    """a_{n+step} = num(n)/den(n) * a_n, and a_n = 0 unless n % step in residues.

    ``num`` and ``den`` are polynomials in n with rational coefficients.
    """

    __slots__ = ("step", "num", "den", "residues")

    def __init__(self, step, num, den, residues):
        self.step = step
        self.num = num
        self.den = den
        self.residues = frozenset(residues)

    def scaled(self, c):
        """Certificate for the stream c^n a_n (c rational)."""
        return HyperCert(self.step, self.num * Fraction(c) ** self.step, self.den, self.residues)


def _qpoly(coeffs):
    return Poly(QQ, coeffs)


# ---------------------------------------------------------------------------
# differential systems
# ---------------------------------------------------------------------------

class DifferentialSystem:
    """The system f' = A f with A an N x N matrix over field(z)."""

    def __init__(self, field, A):
        if not isinstance(A, RatMatrix):
            A = RatMatrix(field, A)
        if A.rows != A.cols:
            raise ValueError("system matrix must be square")
        self.field = field
        self.A = A
        self.dim = A.rows
        self._rec = None
        self._lock = threading.Lock()

    @classmethod
    def from_rows(cls, field, rows):
        """Rows of rational-function strings (or anything RatMatrix accepts)."""
        return cls(field, RatMatrix(field, rows))

    def __eq__(self, other):
        return isinstance(other, DifferentialSystem) and self.field == other.field and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"DifferentialSystem(dim={self.dim}, A={self.A.to_rows()})"

    def common_denominator(self):
        return self.A.common_denominator()

    def singularities(self, include_zero=False):
        """Distinct finite poles of A (elements of the field)."""
        L = self.common_denominator()
        roots = []
        for r in poly_roots_in_field(L):
            if r not in roots and (include_zero or not r.is_zero()):
                roots.append(r)
        return roots

    def pole_metric(self):
        """Total pole degree outside z = 0."""
        L = self.common_denominator()
        v = L.valuation() or 0
        return L.degree - v

    def conjugate(self, sigma):
        return DifferentialSystem(self.field, self.A.map_coeffs(sigma))

    def over(self, field):
        if field is self.field:
            return self
        return DifferentialSystem(field, self.A.over(field))

    def scale_argument(self, alpha):
        """System of f(alpha z): alpha * A(alpha z); alpha = 0 uses the limit."""
        alpha = self.field.element(alpha)
        if not alpha.is_zero():
            return DifferentialSystem(self.field, self.A.scale_argument(alpha) * alpha)
        rows = []
        for row in self.A.entries:
            out = []
            for r in row:
                v = r.den.valuation() or 0
                if v == 0 or not r:
                    out.append(RatFun.zero(self.field))
                elif v == 1:
                    d1 = Poly(self.field, r.den.coeffs[1:])
                    out.append(RatFun(Poly.const(self.field, r.num.coeff(0) / d1.coeff(0)), Poly.z(self.field)))
                else:
                    raise ZeroIsIrregular("f(0*z) is undefined for a pole of order >= 2 at z = 0")
            rows.append(out)
        return DifferentialSystem(self.field, RatMatrix(self.field, rows))

    def recurrence(self):
        with self._lock:
            if self._rec is None:
                self._rec = Recurrence(self)
            return self._rec

    def to_rows(self):
        return self.A.to_rows()


def sum_system(S1, S2):
    """Block-diagonal system for the concatenated vector (f, g)."""
    field = _merge_fields(S1.field, S2.field)
    n1, n2 = S1.dim, S2.dim
    rows = []
    for i in range(n1):
        rows.append(list(S1.A.entries[i]) + [0] * n2)
    for i in range(n2):
        rows.append([0] * n1 + list(S2.A.entries[i]))
    return DifferentialSystem(field, RatMatrix(field, rows))


def product_system(S1, S2):
    """System for the products f_i g_j, index i*N2 + j (Kronecker sum A x I + I x B)."""
    field = _merge_fields(S1.field, S2.field)
    n1, n2 = S1.dim, S2.dim
    zero = RatFun.zero(field)
    rows = []
    for i in range(n1):
        for j in range(n2):
            row = [zero] * (n1 * n2)
            for k in range(n1):
                a = S1.A.entries[i][k]
                if a:
                    row[k * n2 + j] = row[k * n2 + j] + a
            for l in range(n2):
                b = S2.A.entries[j][l]
                if b:
                    row[i * n2 + l] = row[i * n2 + l] + b
            rows.append(row)
    return DifferentialSystem(field, RatMatrix(field, rows))


def monomials(N, D):
    """Exponent tuples of total degree D in N variables, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(N), D):
        e = [0] * N
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def symmetric_power_matrix(S, D):
    N = S.dim
    mons = monomials(N, D)
    index = {m: r for r, m in enumerate(mons)}
    zero = RatFun.zero(S.field)
    rows = []
    for I in mons:
        row = [zero] * len(mons)
        for i in range(N):
            if I[i] == 0:
                continue
            for k in range(N):
                a = S.A.entries[i][k]
                if not a:
                    continue
                J = list(I)
                J[i] -= 1
                J[k] += 1
                c = index[tuple(J)]
                row[c] = row[c] + a * I[i]
        rows.append(row)
    return DifferentialSystem(S.field, RatMatrix(S.field, rows)), mons


def _merge_fields(a, b):
    if a is b or a == b:
        return a
    if a.degree == 1:
        return b
    if b.degree == 1:
        return a
    raise FieldMismatch(f"{a!r} and {b!r} differ")


# ---------------------------------------------------------------------------
# recurrence extracted from a system
# ---------------------------------------------------------------------------

class Recurrence:
    """Forward recurrence for a_n derived from f' = A f.

    Equation E_n (n >= 0), after scaling by (n+s)!::

        sum_{delta >= -s} ff(n+s, s+delta) * (l_{delta+1} (n-delta) I - P_delta) a_{n-delta} = 0

    where l_k, P_k are the z^k coefficients of L and P = L*A and s in {0, 1}
    is the top shift.  The leading matrix is G(m) = l_{1-s} m I - P_{-s}.
    """

    def __init__(self, system):
        field = system.field
        self.field = field
        N = self.dim = system.dim
        L = system.common_denominator()
        P = [[(a * RatFun(L)).num for a in row] for row in system.A.entries]
        self.L = L
        self.P = P
        self.ell = list(L.coeffs)
        maxP = max((p.degree for row in P for p in row), default=-1)
        self.maxdeg = max(L.degree, maxP, 0)
        vL = L.valuation()
        vP = min((p.valuation() for row in P for p in row if p), default=None)
        cand = [1 - vL]
        if vP is not None:
            cand.append(-vP)
        self.s = s = max(cand)
        zero = field.zero
        self.Pk = []
        for k in range(maxP + 1):
            self.Pk.append([[row[j].coeff(k) for j in range(N)] for row in P])
        # delta ranges over -s .. maxdeg
        self.deltas = list(range(-s, self.maxdeg + 1))
        self.ell_pad = self.ell + [zero] * (self.maxdeg + 3)
        # leading matrix as polynomial in m
        l_top = self.ell_pad[1 - s]
        P_top = self.Pk[-s] if 0 <= -s < len(self.Pk) else [[zero] * N for _ in range(N)]
        self.l_top = l_top
        self.P_top = P_top
        m = Poly.z(field)
        G = RatMatrix(field, [[(m * l_top if i == j else Poly._raw(field, [])) - P_top[i][j]
                               for j in range(N)] for i in range(N)])
        detG = G.det()
        if not detG:
            raise ZeroIsIrregular("the leading matrix of the coefficient recurrence is identically singular")
        self.detG = detG.num
        roots = _nonneg_int_roots(self.detG)
        self.bad = roots
        self.n_start = max(self.maxdeg + N + 2, (max(roots) + 1) if roots else 0)

    def K(self, delta, n):
        """Coefficient matrix of a_{n-delta} in scaled E_n (as list of rows), or None if zero."""
        s = self.s
        f = falling(n + s, s + delta)
        if f == 0:
            return None
        N = self.dim
        lv = self.ell_pad[delta + 1] if delta + 1 >= 0 else self.field.zero
        lv = lv * (n - delta) if lv else lv
        Pd = self.Pk[delta] if 0 <= delta < len(self.Pk) else None
        rows = []
        nonzero = False
        for i in range(N):
            row = []
            for j in range(N):
                x = lv if i == j else self.field.zero
                if Pd is not None and Pd[i][j]:
                    x = x - Pd[i][j]
                if x:
                    x = x * f
                    nonzero = True
                row.append(x)
            rows.append(row)
        return rows if nonzero else None

    def G(self, m):
        N = self.dim
        return [[(self.l_top * m if i == j else self.field.zero) - self.P_top[i][j] for j in range(N)]
                for i in range(N)]

    def residual(self, n, get):
        """Vector value of scaled E_n given a coefficient accessor get(m) -> tuple."""
        N = self.dim
        out = [self.field.zero] * N
        for delta in self.deltas:
            m = n - delta
            if m < 0:
                continue
            Km = self.K(delta, n)
            if Km is None:
                continue
            v = get(m)
            for i in range(N):
                acc = out[i]
                for j in range(N):
                    if Km[i][j] and v[j]:
                        acc = acc + Km[i][j] * v[j]
                out[i] = acc
        return out

    def step(self, m, get):
        """Compute a_m from earlier coefficients (requires G(m) invertible)."""
        n = m - self.s
        N = self.dim
        rhs = [self.field.zero] * N
        for delta in self.deltas[1:]:
            k = n - delta
            if k < 0:
                continue
            Km = self.K(delta, n)
            if Km is None:
                continue
            v = get(k)
            for i in range(N):
                acc = rhs[i]
                for j in range(N):
                    if Km[i][j] and v[j]:
                        acc = acc - Km[i][j] * v[j]
                rhs[i] = acc
        G = self.G(m)
        if N == 1:
            return (rhs[0] / G[0][0],)
        return tuple(_solve_nf(G, rhs))


def _nonneg_int_roots(p):
    """Non-negative integer roots of a polynomial over a number field."""
    if not p:
        return []
    cs = p.coeffs
    lead = cs[-1]
    bound = 1
    for c in cs[:-1]:
        if c:
            q = (c / lead).house_upper()
            bound = max(bound, int(q) + 2)
    bound = bound + 1
    if bound > 10 ** 6:
        raise ZeroIsIrregular("indicial bound too large")
    roots = []
    for m in range(bound + 1):
        if p(m).is_zero():
            roots.append(m)
    return roots


def _solve_nf(M, b):
    """Solve a square linear system over a number field."""
    n = len(M)
    A = [list(r) + [bi] for r, bi in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ZeroIsIrregular("singular leading matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _sparse_solve(field, rows, nvars):
    """Gaussian elimination on sparse rows ({var: coeff}, rhs).

    Returns (solution dict, rank).  Raises InconsistentSeeds on a contradiction.
    """
    pivots = {}  # var -> (row dict, rhs), row normalized with coeff 1 at var
    order = []
    for row, rhs in rows:
        row = {k: v for k, v in row.items() if v}
        # reduce by existing pivots
        changed = True
        while changed:
            changed = False
            for var in list(row):
                if var in pivots and row.get(var):
                    c = row.pop(var)
                    prow, prhs = pivots[var]
                    for k, v in prow.items():
                        if k == var:
                            continue
                        nv = row.get(k, field.zero) - c * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
                    rhs = rhs - c * prhs
                    changed = True
                    break
        if not row:
            if rhs:
                raise InconsistentSeeds("seed values contradict the differential system")
            continue
        var = min(row)
        inv = row[var].inverse()
        row = {k: v * inv for k, v in row.items()}
        rhs = rhs * inv
        # back-substitute into existing pivots to keep them reduced
        for pv, (prow, prhs) in list(pivots.items()):
            c = prow.get(var)
            if c:
                for k, v in row.items():
                    nv = prow.get(k, field.zero) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                pivots[pv] = (prow, prhs - c * rhs)
        pivots[var] = (row, rhs)
        order.append(var)
    sol = {}
    for var, (row, rhs) in pivots.items():
        if len(row) == 1:
            sol[var] = rhs
    return sol, len(pivots)


# ---------------------------------------------------------------------------
# streams
# ---------------------------------------------------------------------------

class EFunction:
    """Lazy exact stream a_0, a_1, ... for f = sum a_n z^n / n!."""

    def __init__(self, field, compute, *, evector=None, component=None, name=None,
                 bound=None, hyper=None, growth_hint=None):
        self.field = field
        self._compute = compute
        self._memo = []
        self._lock = threading.RLock()
        self.evector = evector
        self.component = component
        self.name = name
        self.bound = bound
        self.hyper = hyper
        self.growth_hint = growth_hint

    def __repr__(self):
        backend = "system" if self.evector is not None else "explicit"
        return f"EFunction({self.name or '?'}, {backend})"

    @property
    def is_system_backed(self):
        return self.evector is not None

    def coeff(self, n):
        memo = self._memo
        if n < len(memo):
            return memo[n]
        with self._lock:
            while len(memo) <= n:
                memo.append(self._compute(len(memo)))
        return memo[n]

    __getitem__ = coeff

    def coeffs(self, n):
        """a_0 .. a_{n-1}."""
        if n > 0:
            self.coeff(n - 1)
        return list(self._memo[:n])

    def taylor(self, n):
        """Coefficient of z^n."""
        return self.coeff(n) / math.factorial(n)

    def taylor_coeffs(self, n):
        return [self.taylor(k) for k in range(n)]

    def require_system(self):
        if self.evector is None:
            raise SystemRequired(f"{self!r} has an explicit generator and no differential system")
        return self.evector

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, EFunction):
            return other
        c = self.field.element(other) if not isinstance(other, NFElement) else other
        return constant(c)

    def __add__(self, other):
        return add(self, self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(self._lift(other), -1))

    def __rsub__(self, other):
        return add(self._lift(other), scale(self, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, EFunction):
            return multiply(self, other)
        if isinstance(other, Poly):
            return mul_poly(self, other)
        return scale(self, other)

    __rmul__ = __mul__


def _field_of(*fs):
    field = fs[0].field
    for f in fs[1:]:
        field = _merge_fields(field, f.field)
    return field


def efun_explicit(generator, field=QQ, name=None, bound=None, hyper=None):
    """E-function from a total coefficient generator n -> a_n."""
    return EFunction(field, lambda n: field.element(generator(n)), name=name, bound=bound, hyper=hyper)


def constant(c):
    field = c.field
    zero = field.zero
    return EFunction(field, lambda n: c if n == 0 else zero, name=str(c),
                     bound=CoeffBound(c.house_upper()), hyper=None)


def add(f, g):
    field = _field_of(f, g)
    bound = f.bound + g.bound if f.bound and g.bound else None
    return EFunction(field, lambda n: field.element(f.coeff(n)) + g.coeff(n), bound=bound,
                     name=f"({f.name}+{g.name})")


def scale(f, c):
    c = f.field.element(c) if not isinstance(c, NFElement) else c
    field = _merge_fields(f.field, c.field)
    bound = f.bound.scaled(c.house_upper()) if f.bound else None
    hyper = f.hyper if c.is_rational() and c else None
    return EFunction(field, lambda n: c * f.coeff(n), bound=bound, hyper=hyper,
                     name=f"{c.to_expr()}*{f.name}")


def linear_combination(coeffs, fs):
    """sum c_j f_j as a single stream (combined exactly before any summation)."""
    field = _field_of(*fs)
    for c in coeffs:
        if isinstance(c, NFElement):
            field = _merge_fields(field, c.field)
    cs = [field.element(c) for c in coeffs]
    pairs = [(c, f) for c, f in zip(cs, fs) if c]
    bound = None
    if pairs and all(f.bound for _, f in pairs):
        bound = pairs[0][1].bound.scaled(pairs[0][0].house_upper())
        for c, f in pairs[1:]:
            bound = bound + f.bound.scaled(c.house_upper())
    zero = field.zero

    def compute(n):
        acc = zero
        for c, f in pairs:
            a = f.coeff(n)
            if a:
                acc = acc + c * a
        return acc

    return EFunction(field, compute, bound=bound or (CoeffBound(0) if not pairs else None), name="lincomb")


class _Binomials:
    """Rows of Pascal's triangle, built on demand and shared."""

    def __init__(self):
        self.rows = [[1]]
        self.lock = threading.Lock()

    def row(self, n):
        rows = self.rows
        if n < len(rows):
            return rows[n]
        with self.lock:
            while len(rows) <= n:
                prev = rows[-1]
                rows.append([1] + [prev[k] + prev[k + 1] for k in range(len(prev) - 1)] + [1])
        return rows[n]


BINOMIALS = _Binomials()


def multiply(f, g):
    """Product fg: binomial convolution c_n = sum C(n,k) a_k b_{n-k}."""
    field = _field_of(f, g)
    zero = field.zero

    def compute(n):
        row = BINOMIALS.row(n)
        acc = zero
        for k in range(n + 1):
            a = f.coeff(k)
            if a:
                b = g.coeff(n - k)
                if b:
                    acc = acc + (a * b) * row[k]
        return field.element(acc) if acc.field is not field else acc

    bound = f.bound.convolve(g.bound) if f.bound and g.bound else None
    return EFunction(field, compute, bound=bound, name=f"({f.name}*{g.name})")


def power(f, k):
    out = constant(f.field.one)
    for _ in range(k):
        out = multiply(out, f)
    return out


def mul_poly(f, p):
    """p(z) f(z): a'_n = sum_k p_k ff(n,k) a_{n-k}."""
    field = _merge_fields(f.field, p.field)
    cs = [(k, c) for k, c in enumerate(p.coeffs) if c]
    zero = field.zero

    def compute(n):
        acc = zero
        for k, c in cs:
            if k <= n:
                a = f.coeff(n - k)
                if a:
                    acc = acc + c * a * falling(n, k)
        return acc

    bound = None
    if f.bound:
        tot = sum((c.house_upper() for _, c in cs), Fraction(0))
        bound = CoeffBound(f.bound.C * tot, f.bound.k + max(p.degree, 0), f.bound.rho)
    return EFunction(field, compute, bound=bound, name=f"({p.to_expr()})*{f.name}")


def derivative(f):
    bound = f.bound.derived() if f.bound else None
    return EFunction(f.field, lambda n: f.coeff(n + 1), bound=bound, name=f"{f.name}'")


def conjugate(f, sigma):
    """f^sigma: sigma applied to every coefficient."""
    if f.field.degree == 1:
        return f
    f.field.require_galois()
    if f.evector is not None:
        return f.evector.conjugate(sigma).component(f.component)
    return EFunction(f.field, lambda n: sigma(f.coeff(n)), bound=f.bound, hyper=f.hyper,
                     name=f"{f.name}^sigma{sigma.index}")


def scale_argument_stream(f, alpha):
    """f(alpha z) as a stream: alpha^n a_n."""
    alpha = f.field.element(alpha) if not isinstance(alpha, NFElement) else alpha
    field = _merge_fields(f.field, alpha.field)
    powers = [field.one]
    lock = threading.Lock()

    def compute(n):
        with lock:
            while len(powers) <= n:
                powers.append(powers[-1] * alpha)
        return powers[n] * f.coeff(n)

    bound = f.bound.argument_scaled(alpha.house_upper()) if f.bound else None
    hyper = f.hyper.scaled(alpha.c[0]) if f.hyper and alpha.is_rational() else None
    return EFunction(field, compute, bound=bound, hyper=hyper, name=f"{f.name}({alpha.to_expr()}z)")


def scale_argument(f, alpha):
    """f(alpha z); system-backed inputs give a system-backed result."""
    if f.evector is not None:
        ev = f.evector.scale_argument(alpha)
        return ev.component(f.component)
    return scale_argument_stream(f, alpha)


def real_imag_parts(f):
    """(Re f, Im f) coefficientwise with respect to the distinguished embedding."""
    field = f.field
    if field.degree == 1:
        return f, constant(field.zero)
    tau = field.complex_conjugation()
    fc = conjugate(f, tau)
    re = scale(add(f, fc), Fraction(1, 2))
    re.name = f"Re({f.name})"
    i = field.sqrt_minus_one()
    inv2i = (2 * i).inverse()
    im = scale(add(f, scale(fc, -1)), inv2i)
    im.name = f"Im({f.name})"
    return re, im


def is_real_stream(f, order):
    field = f.field
    if field.degree == 1:
        return True
    tau = field.complex_conjugation()
    return all(tau(a) == a for a in f.coeffs(order))


def _to_rational(a, what="coefficient"):
    if not a.is_rational():
        raise RationalityViolation(f"{what} {a} has non-zero theta coordinates")
    return QQ.rational(a.c[0])


def galois_norm(f):
    """prod_sigma f^sigma as an E-function with rational coefficients."""
    field = f.field
    if field.degree == 1:
        return f
    field.require_galois()
    prod = None
    for s in field.automorphisms:
        g = conjugate(f, s)
        prod = g if prod is None else multiply(prod, g)

    def compute(n):
        return _to_rational(prod.coeff(n), f"norm coefficient a_{n}")

    out = EFunction(QQ, compute, bound=prod.bound, name=f"Norm({f.name})")
    out.norm_of = f
    return out


def norm_evector(f):
    """(EVector, index) of the iterated product system carrying galois_norm(f)."""
    field = f.field
    F = f.require_system()
    if field.degree == 1:
        return F, f.component
    field.require_galois()
    auts = field.automorphisms
    ev = F.conjugate(auts[0])
    for s in auts[1:]:
        ev = product_evector(ev, F.conjugate(s))
    N = F.dim
    return ev, sum(f.component * N ** k for k in range(len(auts)))


def conjugate_coordinate_matrix(alpha):
    return alpha.field.conjugate_coordinate_matrix(alpha)


def normal_basis_decompose(g, alpha):
    """Rational streams g_sigma with g = sum_sigma sigma(alpha) g_sigma."""
    field = g.field
    field.require_galois()
    alpha = field.element(alpha)
    C = conjugate_coordinate_matrix(alpha)
    d = field.degree
    if det_fraction(C) == 0:
        raise NotNormalBasis(f"conjugates of {alpha.to_expr()} are Q-linearly dependent")
    # coords(a) = C^T b  =>  b = (C^T)^{-1} coords(a)
    CT = [[C[j][i] for j in range(d)] for i in range(d)]
    inv_cols = [solve_fraction(CT, [Fraction(int(i == k)) for i in range(d)]) for k in range(d)]
    Minv = [[inv_cols[k][i] for k in range(d)] for i in range(d)]
    parts = {}
    for idx, sigma in enumerate(field.automorphisms):
        row = Minv[idx]

        def compute(n, row=row):
            a = g.coeff(n)
            return QQ.rational(sum((r * x for r, x in zip(row, a.c) if r and x), Fraction(0)))

        parts[sigma] = EFunction(QQ, compute, name=f"{g.name}_sigma{idx}")
    return parts


def reconstruct_from_basis(parts, alpha):
    terms = [(sigma(alpha), f) for sigma, f in parts.items()]
    return linear_combination([c for c, _ in terms], [f for _, f in terms])


# ---------------------------------------------------------------------------
# vectors of E-functions tied to a system
# ---------------------------------------------------------------------------

class EVector:
    """Solution vector of a differential system, given by seeds."""

    def __init__(self, system, seeds, *, names=None, bounds=None, hypers=None):
        """``seeds`` maps component index -> list of Taylor coefficients (of z^n)."""
        self.system = system
        self.field = system.field
        self.dim = system.dim
        self.rec = system.recurrence()
        self._vec = []
        self._lock = threading.RLock()
        self.names = names or [f"f{i + 1}" for i in range(self.dim)]
        self._bounds = bounds or [None] * self.dim
        self._hypers = hypers or [None] * self.dim
        self._components = {}
        if isinstance(seeds, (list, tuple)):
            seeds = {i: s for i, s in enumerate(seeds)}
        self.taylor_seeds = {i: [self.field.element(x) for x in v] for i, v in seeds.items()}
        avals = {}
        for i, vals in self.taylor_seeds.items():
            if not 0 <= i < self.dim:
                raise ValueError(f"seed component {i} out of range")
            for m, c in enumerate(vals):
                avals[(m, i)] = c * math.factorial(m)
        self._initialize(avals)

    def _initialize(self, avals):
        rec, N = self.rec, self.dim
        top = max((m for m, _ in avals), default=-1) + 1
        if rec.s == 1 and all((0, i) in avals for i in range(N)):
            self._vec.append(tuple(avals[(0, i)] for i in range(N)))
            self._check_seeds(avals, top)
            return
        M = max(rec.n_start + 2 * N, top)
        rows = []
        for n in range(0, M - rec.s):
            eq = [dict() for _ in range(N)]
            for delta in rec.deltas:
                m = n - delta
                if m < 0 or m >= M:
                    continue
                Km = rec.K(delta, n)
                if Km is None:
                    continue
                for i in range(N):
                    for j in range(N):
                        if Km[i][j]:
                            key = m * N + j
                            eq[i][key] = eq[i].get(key, self.field.zero) + Km[i][j]
            for i in range(N):
                rows.append((eq[i], self.field.zero))
        for (m, i), v in sorted(avals.items()):
            rows.append(({m * N + i: self.field.one}, v))
        sol, rank = _sparse_solve(self.field, rows, N * M)
        if rank < N * M:
            raise UnderdeterminedSeeds(
                f"seeds fix {rank} of {N * M} unknown coefficients; supply more initial values")
        for m in range(M):
            self._vec.append(tuple(sol[m * N + j] for j in range(N)))

    def _check_seeds(self, avals, top):
        for (m, i), v in avals.items():
            if self.vector(m)[i] != v:
                raise InconsistentSeeds(
                    f"seed for component {i + 1} at z^{m} disagrees with the system")

    @classmethod
    def from_streams(cls, system, funcs, extra=0, **kw):
        """EVector whose seeds are read off existing streams (consistency is checked)."""
        rec = system.recurrence()
        n = max(rec.n_start + 2 * system.dim, 1) + extra
        seeds = {i: f.taylor_coeffs(n) for i, f in enumerate(funcs)}
        return cls(system, seeds, **kw)

    def __repr__(self):
        return f"EVector(dim={self.dim}, names={self.names})"

    def vector(self, m):
        vec = self._vec
        if m < len(vec):
            return vec[m]
        with self._lock:
            while len(vec) <= m:
                vec.append(self.rec.step(len(vec), self._vec.__getitem__))
        return vec[m]

    def component(self, i):
        f = self._components.get(i)
        if f is None:
            f = EFunction(self.field, lambda n: self.vector(n)[i], evector=self, component=i,
                          name=self.names[i], bound=self._bounds[i], hyper=self._hypers[i])
            self._components[i] = f
        return f

    def components(self):
        return [self.component(i) for i in range(self.dim)]

    def seeds_for_output(self, n=None):
        """Taylor seeds a_m/m! for m < n (default n_start) per component."""
        n = n or self.rec.n_start
        return [[self.vector(m)[i] / math.factorial(m) for m in range(n)] for i in range(self.dim)]

    def check_system(self, order):
        """Verify every scaled equation E_n (n < order) on the computed prefix."""
        for n in range(order):
            res = self.rec.residual(n, self.vector)
            if any(res):
                return False
        return True

    def conjugate(self, sigma):
        if self.field.degree == 1 or sigma.is_identity():
            return self
        self.field.require_galois()
        system = self.system.conjugate(sigma)
        seeds = {i: [sigma(c) for c in v] for i, v in self.taylor_seeds.items()}
        return EVector(system, seeds, names=[f"{n}^s{sigma.index}" for n in self.names],
                       bounds=self._bounds, hypers=self._hypers)

    def over(self, field):
        """The same vector with the ambient field enlarged to ``field``."""
        if field is self.field:
            return self
        if self.field.degree != 1:
            raise FieldMismatch(f"cannot move {self!r} from {self.field!r} to {field!r}")
        return EVector(self.system.over(field), self.taylor_seeds, names=self.names,
                       bounds=self._bounds, hypers=self._hypers)

    def scale_argument(self, alpha):
        if isinstance(alpha, NFElement) and alpha.field != self.field and self.field.degree == 1:
            return self.over(alpha.field).scale_argument(alpha)
        alpha = self.field.element(alpha)
        system = self.system.scale_argument(alpha)
        src = [scale_argument_stream(f, alpha) for f in self.components()]
        return EVector.from_streams(system, src, names=[f"{n}({alpha.to_expr()}z)" for n in self.names],
                                    bounds=[f.bound for f in src], hypers=[f.hyper for f in src])


def evector_from_system(system, seeds, **kw):
    return EVector(system, seeds, **kw)


def concat_evector(F, G):
    system = sum_system(F.system, G.system)
    return EVector.from_streams(system, F.components() + G.components(), names=F.names + G.names)


def product_evector(F, G):
    system = product_system(F.system, G.system)
    funcs = [multiply(f, g) for f in F.components() for g in G.components()]
    names = [f"{a}*{b}" for a in F.names for b in G.names]
    return EVector.from_streams(system, funcs, names=names, bounds=[f.bound for f in funcs])


def symmetric_power_system(F, D):
    """System and EVector for the monomials of degree D in the components of F."""
    if D < 1:
        raise ValueError("D must be >= 1")
    system, mons = symmetric_power_matrix(F.system, D)
    comps = F.components()
    cache = {}

    def pw(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = constant(F.field.one) if e == 0 else multiply(pw(i, e - 1), comps[i])
        return cache[key]

    funcs, names = [], []
    for I in mons:
        g = None
        for i, e in enumerate(I):
            if e:
                g = pw(i, e) if g is None else multiply(g, pw(i, e))
        funcs.append(g)
        names.append("*".join(f"{F.names[i]}^{e}" if e > 1 else F.names[i] for i, e in enumerate(I) if e))
    ev = EVector.from_streams(system, funcs, names=names, bounds=[f.bound for f in funcs])
    return system, ev


# ---------------------------------------------------------------------------
# relation search
# ---------------------------------------------------------------------------

class Relation:
    """Polynomial vector (R_j) with sum R_j f_j == 0 on the checked truncation."""

    def __init__(self, polys, degree, order, verified_order):
        self.polys = polys
        self.degree = degree
        self.order = order
        self.verified_order = verified_order

    def __repr__(self):
        return f"Relation({[p.to_expr() for p in self.polys]})"


class NoRelation:
    """No polynomial relation of degree <= max_deg at the given order (not a proof)."""

    def __init__(self, max_deg, order):
        self.max_deg = max_deg
        self.order = order

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoRelation(max_deg={self.max_deg}, order={self.order})"


def linear_relation_search(fs, max_deg=8, max_order=120):
    field = _field_of(*fs)
    N = len(fs)
    for D in range(max_deg + 1):
        nvars = N * (D + 1)
        if nvars >= max_order:
            break
        rows = []
        for n in range(max_order):
            row = {}
            for j, f in enumerate(fs):
                for k in range(min(D, n) + 1):
                    a = f.coeff(n - k)
                    if a:
                        row[j * (D + 1) + k] = field.element(a) * falling(n, k)
            rows.append(row)
        vec = _kernel_vector(field, rows, nvars)
        if vec is None:
            continue
        polys = [Poly(field, vec[j * (D + 1):(j + 1) * (D + 1)]) for j in range(N)]
        combo = _relation_stream(polys, fs)
        if all(not combo.coeff(n) for n in range(2 * max_order)):
            return Relation(polys, D, max_order, 2 * max_order)
    return NoRelation(max_deg, max_order)


def _relation_stream(polys, fs):
    terms = [mul_poly(f, p) for p, f in zip(polys, fs) if p]
    return linear_combination([1] * len(terms), terms)


def _kernel_vector(field, rows, nvars):
    """A non-zero kernel vector (first free variable set to 1), or None."""
    pivots = {}
    for row in rows:
        row = dict(row)
        for var in sorted(pivots):
            c = row.get(var)
            if c:
                for k, v in pivots[var].items():
                    nv = row.get(k, field.zero) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        row = {k: v for k, v in row.items() if v}
        if not row:
            continue
        var = min(row)
        inv = row[var].inverse()
        row = {k: v * inv for k, v in row.items()}
        for pv in pivots:
            c = pivots[pv].get(var)
            if c:
                prow = pivots[pv]
                for k, v in row.items():
                    nv = prow.get(k, field.zero) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[var] = row
        if len(pivots) == nvars:
            return None
    free = [v for v in range(nvars) if v not in pivots]
    if not free:
        return None
    f0 = free[0]
    vec = [field.zero] * nvars
    vec[f0] = field.one
    for pv, row in pivots.items():
        vec[pv] = -row.get(f0, field.zero)
    # normalize the first non-zero entry to 1
    lead = next(x for x in vec if x)
    inv = lead.inverse()
    return [x * inv for x in vec]
