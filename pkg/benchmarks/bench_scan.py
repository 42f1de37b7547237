"""Time the compiled scan kernels against the pure-Python ones.

    python3 benchmarks/bench_scan.py [--repeat 3] [--qmax 20000] [--quick]

Inputs mirror what ``liouville_scan`` and ``linear_form_scan`` feed the
kernels: e to 80 digits as 32-bit limbs, and random form tables shaped like
the house-bounded grids over Q and Q(sqrt 2).
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from efunc import catalog
from efunc._kernels import _scan_py
from efunc.numeval import evaluate

try:
    from efunc._kernels import _scan as _scan_c
except ImportError:
    _scan_c = None


def limbs(v, L):
    return np.array([(v >> (32 * (L - 1 - i))) & 0xFFFFFFFF for i in range(L)], dtype=np.uint32)


def liouville_inputs(digits=80):
    xi = evaluate(catalog.exp(), 1, digits)
    frac = xi.re - (xi.re.numerator // xi.re.denominator)
    L = 10
    W = 32 * L
    X = (frac.numerator << W) // frac.denominator
    E = -((-Fraction(xi.rad).numerator << W) // Fraction(xi.rad).denominator) + 1
    return limbs(X, L), limbs(E, L)


def form_inputs(N, M, R, seed=1):
    rng = np.random.default_rng(seed)
    vre = rng.normal(size=(N, M))
    vim = np.zeros((N, M))
    rank = rng.integers(0, R, size=(N, M)).astype(np.int32)
    sgn = np.sign(rng.normal(size=(N, M))).astype(np.int8)
    vre[:, 0], rank[:, 0], sgn[:, 0] = 0, 0, 0
    hpow = np.linspace(0, 20, R)
    return (np.ascontiguousarray(vre), vim, rank, sgn, np.array([M] * N, dtype=np.int64), hpow)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--qmax", type=int, default=20000)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()

    backends = [("python", _scan_py)] + ([("cython", _scan_c)] if _scan_c is not None else [])
    if _scan_c is None:
        print("compiled kernels not built; timing the pure-Python backend only")
    qmax = 2000 if args.quick else args.qmax
    x, e = liouville_inputs()
    cases = [(f"liouville  q <= {qmax}", lambda m: m.frac_dist_limbs(x, e, 2, qmax + 1, 3.0))]
    shapes = [(2, 200, 20), (3, 40, 10)] if args.quick else [(2, 800, 40), (3, 120, 20)]
    for N, M, R in shapes:
        grid = form_inputs(N, M, R)
        cases.append((f"forms N={N} M={M} ({M ** N} forms)",
                      lambda m, g=grid: m.forms_scan(*g, 0, g[0].shape[1], 1e-9)))

    print(f"{'case':<34}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _scan_c else ""))
    for label, run in cases:
        ts = [best_of(lambda m=mod: run(m), args.repeat) for _, mod in backends]
        row = f"{label:<34}" + "".join(f"{t:>11.4f}s" for t in ts)
        if len(ts) == 2:
            row += f"{ts[0] / ts[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
