"""Compiled and pure-Python scan kernels agree with each other and with a naive loop."""

import os
import subprocess
import sys
from itertools import product
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from efunc import _kernels
from efunc._kernels import _scan_py

try:
    from efunc._kernels import _scan as _scan_c
except ImportError:  # pragma: no cover - compiled module missing
    _scan_c = None

BACKENDS = [_scan_py] + ([_scan_c] if _scan_c is not None else [])
needs_c = pytest.mark.skipif(_scan_c is None, reason="compiled kernels not built")


def test_backend_reported():
    assert _kernels.BACKEND in ("cython", "python")
    if _scan_c is not None and _kernels.BACKEND == "cython":
        assert _kernels.scan is _scan_c


def limbs(v, L):
    return np.array([(v >> (32 * (L - 1 - i))) & 0xFFFFFFFF for i in range(L)], dtype=np.uint32)


# -- fractional distances -----------------------------------------------------------

@settings(max_examples=40)
@given(st.integers(1, 4), st.data())
def test_frac_dist_against_integers(L, data):
    W = 32 * L
    X = data.draw(st.integers(0, 2 ** W - 1))
    E = data.draw(st.integers(0, 2 ** max(W - 20, 1)))
    q0 = data.draw(st.integers(1, 500))
    q1 = q0 + data.draw(st.integers(1, 300))
    kappa = data.draw(st.sampled_from([0.0, 1.0, 2.0, 3.5]))
    one = 1 << W
    for mod in BACKENDS:
        approx, excl = mod.frac_dist_limbs(limbs(X, L), limbs(E, L), q0, q1, kappa)
        for k, q in enumerate(range(q0, q1)):
            y = (q * X) % one
            y = min(y, one - y)
            assert bool(excl[k]) == (y > q * E)
            want = float(q) ** kappa * (y / one)
            assert abs(approx[k] - want) <= 1e-12 * max(want, 1e-300)


# -- form scans --------------------------------------------------------------------

def random_grid(rng, N, M, R):
    vre = rng.normal(size=(N, M))
    vim = rng.normal(size=(N, M)) * rng.integers(0, 2)
    rank = rng.integers(0, R, size=(N, M)).astype(np.int32)
    sgn = rng.integers(-1, 2, size=(N, M)).astype(np.int8)
    # slot value 0 is the zero element in every row
    vre[:, 0] = vim[:, 0] = 0
    rank[:, 0] = 0
    sgn[:, 0] = 0
    hpow = np.sort(rng.uniform(0.5, 5.0, size=R))
    hpow[0] = 0.0
    return (np.ascontiguousarray(vre), np.ascontiguousarray(vim), rank, sgn,
            np.array([M] * N, dtype=np.int64), hpow)


def naive(vre, vim, rank, sgn, counts, hpow, tau):
    N, M = vre.shape
    best, best_flat, tiny = np.inf, -1, []
    per_rank = {}
    for idx in product(range(M), repeat=N):
        first = next((sgn[j, m] for j, m in enumerate(idx) if sgn[j, m]), 0)
        if first <= 0:
            continue
        re = sum(vre[j, m] for j, m in enumerate(idx))
        im = sum(vim[j, m] for j, m in enumerate(idx))
        a = float(np.hypot(re, im))
        flat = 0
        for m in idx:
            flat = flat * M + m
        if a <= tau:
            tiny.append(flat)
            continue
        r = max(rank[j, m] for j, m in enumerate(idx))
        v = hpow[r] * a
        if v < best:
            best, best_flat = v, flat
        per_rank.setdefault(r, []).append(a)
    return best, best_flat, sorted(tiny), {r: sorted(v)[:2] for r, v in per_rank.items()}


@settings(max_examples=25)
@given(st.integers(1, 3), st.integers(2, 7), st.integers(1, 4), st.integers(0, 2 ** 31))
def test_forms_scan_against_naive(N, M, R, seed):
    rng = np.random.default_rng(seed)
    grid = random_grid(rng, N, M, R)
    tau = 0.05
    best, best_flat, tiny, per_rank = naive(*grid, tau)
    for mod in BACKENDS:
        min_val, min_flat, ba, bi, sa, tl, n_t = mod.forms_scan(*grid, 0, M, tau)
        assert sorted(tl.tolist()) == tiny and n_t == len(tiny)
        if np.isfinite(best):
            assert abs(min_val - best) <= 1e-12 * best and min_flat == best_flat
        for r, two in per_rank.items():
            assert abs(ba[r] - two[0]) <= 1e-12 * max(two[0], 1)
            if len(two) > 1:
                assert abs(sa[r] - two[1]) <= 1e-12 * max(two[1], 1)


@needs_c
@settings(max_examples=25)
@given(st.integers(1, 4), st.integers(2, 9), st.integers(1, 5), st.integers(0, 2 ** 31))
def test_backends_agree_on_chunks(N, M, R, seed):
    rng = np.random.default_rng(seed)
    grid = random_grid(rng, N, M, R)
    cut = int(rng.integers(0, M + 1))
    for lo, hi in ((0, cut), (cut, M)):
        a = _scan_py.forms_scan(*grid, lo, hi, 0.1)
        b = _scan_c.forms_scan(*grid, lo, hi, 0.1)
        assert a[0] == pytest.approx(b[0], rel=1e-12) or (np.isinf(a[0]) and np.isinf(b[0]))
        assert a[1] == b[1]
        assert np.allclose(a[2], b[2], rtol=1e-12) and np.allclose(a[4], b[4], rtol=1e-12)
        assert sorted(a[5].tolist()) == sorted(b[5].tolist())
        thr = float(np.median(np.abs(grid[0]))) + 0.5
        ca, na = _scan_py.forms_collect(*grid, lo, hi, thr)
        cb, nb = _scan_c.forms_collect(*grid, lo, hi, thr)
        assert na == nb and sorted(ca.tolist()) == sorted(cb.tolist())


def test_env_forces_pure_python():
    env = dict(os.environ, EFUNC_PURE_PYTHON="1")
    r = subprocess.run([sys.executable, "-c", "from efunc import _kernels; print(_kernels.BACKEND)"],
                       capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "python"


def test_benchmark_runs():
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_scan.py"
    r = subprocess.run([sys.executable, str(script), "--quick", "--repeat", "1"],
                       capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stderr
    assert "liouville" in r.stdout and "forms N=3" in r.stdout
