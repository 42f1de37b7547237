# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels.  Same contract as ``_scan_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport hypot, ldexp, pow
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc

cnp.import_array()

cdef uint64_t MASK32 = 0xFFFFFFFFu


cdef inline double _limbs_to_double(uint32_t *d, Py_ssize_t L) noexcept nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(L):
        if d[i]:
            acc += ldexp(<double>d[i], -32 * (i + 1))
    return acc


cdef void _frac_dist(const uint32_t[::1] x, const uint32_t[::1] e, long q0, long q1,
                     double kappa, double[::1] approx, unsigned char[::1] excl) noexcept nogil:
    cdef Py_ssize_t L = x.shape[0]
    cdef Py_ssize_t i
    cdef long q
    cdef uint64_t carry, t, borrow
    cdef uint32_t *y = <uint32_t *> malloc(L * sizeof(uint32_t))
    cdef uint32_t *thr = <uint32_t *> malloc(L * sizeof(uint32_t))
    cdef bint neg, gt, over
    for q in range(q0, q1):
        # y = q * x mod 1 (limbs most significant first)
        carry = 0
        for i in range(L - 1, -1, -1):
            t = <uint64_t> x[i] * <uint64_t> q + carry
            y[i] = <uint32_t> (t & MASK32)
            carry = t >> 32
        # distance to the nearest integer: min(y, 1 - y)
        neg = (y[0] >> 31) & 1
        if neg:
            borrow = 0
            for i in range(L - 1, -1, -1):
                t = (<uint64_t> 0) - <uint64_t> y[i] - borrow
                y[i] = <uint32_t> (t & MASK32)
                borrow = 1 if (<uint64_t> y[i] != 0 or borrow) else 0
        # thr = q * e (full product; overflow past the unit means no exclusion)
        carry = 0
        for i in range(L - 1, -1, -1):
            t = <uint64_t> e[i] * <uint64_t> q + carry
            thr[i] = <uint32_t> (t & MASK32)
            carry = t >> 32
        over = carry != 0
        gt = False
        if not over:
            for i in range(L):
                if y[i] != thr[i]:
                    gt = y[i] > thr[i]
                    break
        excl[q - q0] = 1 if gt else 0
        approx[q - q0] = pow(<double> q, kappa) * _limbs_to_double(y, L)
    free(y)
    free(thr)


def frac_dist_limbs(x, e, long q0, long q1, double kappa):
    cdef const uint32_t[::1] xv = x
    cdef const uint32_t[::1] ev = e
    approx = np.empty(q1 - q0, dtype=np.float64)
    excl = np.empty(q1 - q0, dtype=np.uint8)
    cdef double[::1] av = approx
    cdef unsigned char[::1] exv = excl
    with nogil:
        _frac_dist(xv, ev, q0, q1, kappa, av, exv)
    return approx, excl


cdef void _forms_scan(const double[:, ::1] vre, const double[:, ::1] vim,
                      const int[:, ::1] rank, const signed char[:, ::1] sgn,
                      const int64_t[::1] counts, const double[::1] hpow,
                      int64_t lo, int64_t hi, double tau, double thr, int mode,
                      double *min_val, int64_t *min_flat,
                      double[::1] best_abs, int64_t[::1] best_idx, double[::1] second_abs,
                      int64_t[::1] out, int64_t *n_out) noexcept nogil:
    cdef Py_ssize_t N = counts.shape[0]
    cdef Py_ssize_t j, last = N - 1
    cdef int64_t m, m_lo, m_hi, flat, pre_flat
    cdef int64_t *idx = <int64_t *> malloc((N + 1) * sizeof(int64_t))
    cdef int64_t *stride = <int64_t *> malloc((N + 1) * sizeof(int64_t))
    cdef double pre_re, pre_im, re, im, a, val
    cdef int pre_rank, r, pre_sign
    cdef bint done
    stride[last] = 1
    for j in range(last - 1, -1, -1):
        stride[j] = stride[j + 1] * counts[j + 1]
    for j in range(N):
        idx[j] = 0
    if N > 1:
        idx[0] = lo
        m_lo = 0
        m_hi = counts[last]
        done = lo >= hi
    else:
        m_lo = lo
        m_hi = hi
        done = False
    while not done:
        pre_re = 0.0
        pre_im = 0.0
        pre_rank = 0
        pre_sign = 0
        pre_flat = 0
        for j in range(last):
            pre_re += vre[j, idx[j]]
            pre_im += vim[j, idx[j]]
            if rank[j, idx[j]] > pre_rank:
                pre_rank = rank[j, idx[j]]
            if pre_sign == 0:
                pre_sign = sgn[j, idx[j]]
            pre_flat += idx[j] * stride[j]
        if pre_sign >= 0:
            for m in range(m_lo, m_hi):
                if pre_sign == 0 and sgn[last, m] <= 0:
                    continue
                re = pre_re + vre[last, m]
                im = pre_im + vim[last, m]
                a = hypot(re, im)
                r = rank[last, m]
                if pre_rank > r:
                    r = pre_rank
                val = a * hpow[r]
                flat = pre_flat + m
                if mode == 0:
                    if a <= tau:
                        if n_out[0] < out.shape[0]:
                            out[n_out[0]] = flat
                        n_out[0] += 1
                        continue
                    if val < min_val[0]:
                        min_val[0] = val
                        min_flat[0] = flat
                    if a < best_abs[r]:
                        second_abs[r] = best_abs[r]
                        best_abs[r] = a
                        best_idx[r] = flat
                    elif a < second_abs[r]:
                        second_abs[r] = a
                elif val <= thr:
                    if n_out[0] < out.shape[0]:
                        out[n_out[0]] = flat
                    n_out[0] += 1
        # advance the odometer over slots 0..N-2
        if N == 1:
            break
        j = last - 1
        while True:
            idx[j] += 1
            if (j == 0 and idx[j] < hi) or (j > 0 and idx[j] < counts[j]):
                break
            if j == 0:
                done = True
                break
            idx[j] = 0
            j -= 1
    free(idx)
    free(stride)


def forms_scan(vre, vim, rank, sgn, counts, hpow, int64_t lo, int64_t hi,
               double tau, int cap=100000):
    """First pass: global minimum, per-rank best/second-best |Lambda|, near-zero forms."""
    R = hpow.shape[0]
    best_abs = np.full(R, np.inf)
    second_abs = np.full(R, np.inf)
    best_idx = np.full(R, -1, dtype=np.int64)
    out = np.empty(cap, dtype=np.int64)
    cdef double min_val = np.inf
    cdef int64_t min_flat = -1
    cdef int64_t n_out = 0
    cdef const double[:, ::1] a = vre
    cdef const double[:, ::1] b = vim
    cdef const int[:, ::1] rk = rank
    cdef const signed char[:, ::1] sg = sgn
    cdef const int64_t[::1] cn = counts
    cdef const double[::1] hp = hpow
    cdef double[::1] ba = best_abs
    cdef int64_t[::1] bi = best_idx
    cdef double[::1] sa = second_abs
    cdef int64_t[::1] ov = out
    with nogil:
        _forms_scan(a, b, rk, sg, cn, hp, lo, hi, tau, 0.0, 0, &min_val, &min_flat,
                    ba, bi, sa, ov, &n_out)
    return min_val, min_flat, best_abs, best_idx, second_abs, out[:min(n_out, cap)], n_out


def forms_collect(vre, vim, rank, sgn, counts, hpow, int64_t lo, int64_t hi,
                  double thr, int cap=100000):
    """Second pass: flat indices of forms with height^kappa |Lambda| <= thr."""
    R = hpow.shape[0]
    dummy = np.empty(R)
    dummy_i = np.empty(R, dtype=np.int64)
    out = np.empty(cap, dtype=np.int64)
    cdef double min_val = np.inf
    cdef int64_t min_flat = -1
    cdef int64_t n_out = 0
    cdef const double[:, ::1] a = vre
    cdef const double[:, ::1] b = vim
    cdef const int[:, ::1] rk = rank
    cdef const signed char[:, ::1] sg = sgn
    cdef const int64_t[::1] cn = counts
    cdef const double[::1] hp = hpow
    cdef double[::1] ba = dummy
    cdef int64_t[::1] bi = dummy_i
    cdef double[::1] sa = dummy
    cdef int64_t[::1] ov = out
    with nogil:
        _forms_scan(a, b, rk, sg, cn, hp, lo, hi, 0.0, thr, 1, &min_val, &min_flat,
                    ba, bi, sa, ov, &n_out)
    return out[:min(n_out, cap)], n_out
