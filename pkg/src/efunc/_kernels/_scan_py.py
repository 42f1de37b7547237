"""Pure-Python scan kernels (numpy over the innermost slot).

Contract shared with the compiled module ``_scan``:

``frac_dist_limbs(x, e, q0, q1, kappa)``
    ``x`` and ``e`` are uint32 limb arrays (most significant first) of
    W = 32 L bit fixed-point numbers in [0, 1).  For each q in [q0, q1)
    returns ``approx[q] = q^kappa * ||q x||`` (distance to the nearest
    integer, as a double) and ``excl[q] = ||q x|| > q e`` decided exactly.

``forms_scan(vre, vim, rank, sgn, counts, hpow, lo, hi, tau, cap)``
    Scans all forms ``sum_j v[j, i_j]`` with slot-0 index in [lo, hi)
    (the last slot when N = 1) whose first non-zero slot has ``sgn > 0``;
    this skips the zero form and one of each pair +-lambda.  Forms with
    ``|form| <= tau`` are only listed (flat indices), never ranked.  For the
    rest it returns the smallest ``hpow[rank] * |form|`` with its flat index
    and the per-rank best and second-best ``|form|``.

``forms_collect(..., thr, cap)``
    Flat indices of forms with ``hpow[rank] * |form| <= thr``.
"""

import numpy as np


def _to_int(limbs):
    v = 0
    for d in limbs:
        v = (v << 32) | int(d)
    return v


def frac_dist_limbs(x, e, q0, q1, kappa):
    L = len(x)
    W = 32 * L
    one = 1 << W
    half = one >> 1
    X = _to_int(x)
    E = _to_int(e)
    n = q1 - q0
    approx = np.empty(n, dtype=np.float64)
    excl = np.empty(n, dtype=np.uint8)
    for k, q in enumerate(range(q0, q1)):
        y = (q * X) & (one - 1)
        if y >= half:
            y = one - y
        excl[k] = 1 if y > q * E else 0
        approx[k] = float(q) ** kappa * (y / one if y else 0.0)
    return approx, excl


def _strides(counts):
    N = len(counts)
    stride = [1] * N
    for j in range(N - 2, -1, -1):
        stride[j] = stride[j + 1] * int(counts[j + 1])
    return stride


def _outer(counts, lo, hi):
    """Index tuples over slots 0..N-2 (slot 0 restricted to [lo, hi))."""
    N = len(counts)
    if N == 1:
        yield ()
        return
    ranges = [range(lo, hi)] + [range(int(c)) for c in counts[1:-1]]
    idx = [r.start for r in ranges]
    if any(len(r) == 0 for r in ranges):
        return
    while True:
        yield tuple(idx)
        j = len(ranges) - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < ranges[j].stop:
                break
            idx[j] = ranges[j].start
            j -= 1
        if j < 0:
            return


def _sweep(vre, vim, rank, sgn, counts, hpow, lo, hi):
    N = len(counts)
    last = N - 1
    stride = _strides(counts)
    if N == 1:
        ms = np.arange(lo, hi)
    else:
        ms = np.arange(int(counts[last]))
    lre = vre[last, ms]
    lim = vim[last, ms]
    lrk = rank[last, ms]
    positive = sgn[last, ms] > 0
    for pre in _outer(counts, lo, hi):
        pre_sign = 0
        for j, i in enumerate(pre):
            if sgn[j, i]:
                pre_sign = int(sgn[j, i])
                break
        if pre_sign < 0:
            continue
        pre_re = sum(vre[j, i] for j, i in enumerate(pre))
        pre_im = sum(vim[j, i] for j, i in enumerate(pre))
        pre_rank = max((int(rank[j, i]) for j, i in enumerate(pre)), default=0)
        pre_flat = sum(i * stride[j] for j, i in enumerate(pre))
        a = np.hypot(pre_re + lre, pre_im + lim)
        r = np.maximum(lrk, pre_rank)
        val = a * hpow[r]
        if pre_sign == 0:
            yield pre_flat + ms[positive], a[positive], r[positive], val[positive]
        else:
            yield pre_flat + ms, a, r, val


def forms_scan(vre, vim, rank, sgn, counts, hpow, lo, hi, tau, cap=100000):
    R = hpow.shape[0]
    best_abs = np.full(R, np.inf)
    second_abs = np.full(R, np.inf)
    best_idx = np.full(R, -1, dtype=np.int64)
    min_val, min_flat = np.inf, -1
    tiny = []
    n_tiny = 0
    for flat, a, r, val in _sweep(vre, vim, rank, sgn, counts, hpow, lo, hi):
        small = a <= tau
        if small.any():
            t = flat[small]
            n_tiny += len(t)
            if len(tiny) < cap:
                tiny.extend(int(v) for v in t[: cap - len(tiny)])
            keep = ~small
            flat, a, r, val = flat[keep], a[keep], r[keep], val[keep]
        if len(val) == 0:
            continue
        k = int(np.argmin(val))
        if val[k] < min_val:
            min_val, min_flat = float(val[k]), int(flat[k])
        # per-rank two smallest, in scan order for ties
        order = np.lexsort((np.arange(len(a)), a, r))
        rs = r[order]
        starts = np.flatnonzero(np.r_[True, rs[1:] != rs[:-1]])
        ends = np.r_[starts[1:], len(rs)]
        for s0, e0 in zip(starts, ends):
            rr = int(rs[s0])
            v0, f0 = float(a[order[s0]]), int(flat[order[s0]])
            v1 = float(a[order[s0 + 1]]) if e0 - s0 > 1 else np.inf
            if v0 < best_abs[rr]:
                second_abs[rr] = min(best_abs[rr], v1)
                best_abs[rr] = v0
                best_idx[rr] = f0
            elif v0 < second_abs[rr]:
                second_abs[rr] = v0
    return min_val, min_flat, best_abs, best_idx, second_abs, np.array(tiny, dtype=np.int64), n_tiny


def forms_collect(vre, vim, rank, sgn, counts, hpow, lo, hi, thr, cap=100000):
    out = []
    n = 0
    for flat, a, r, val in _sweep(vre, vim, rank, sgn, counts, hpow, lo, hi):
        t = flat[val <= thr]
        n += len(t)
        if len(out) < cap:
            out.extend(int(v) for v in t[: cap - len(out)])
    return np.array(out, dtype=np.int64), n
