# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: compensated mode sums and the cyclic Jacobi solver.

Mirrors ``_pykernels`` one-for-one.
"""

import numpy as np

from libc.math cimport cos, sqrt, fabs, copysign, M_PI


cdef inline void _neumaier(double x, double* s, double* c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def compensated_sum(x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier(xv[i], &s, &c)
    return s + c


def residue_sums(x, long period):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    if period <= 0 or n % period:
        raise ValueError("period must divide len(x)")
    out = np.empty(period)
    cdef double[::1] ov = out
    cdef Py_ssize_t r, k
    cdef double s, c
    with nogil:
        for r in range(period):
            s = 0.0
            c = 0.0
            k = r
            while k < n:
                _neumaier(xv[k], &s, &c)
                k += period
            ov[r] = s + c
    return out


def cosine_table(long period):
    out = np.empty(period)
    cdef double[::1] ov = out
    cdef long r, rr
    for r in range(period):
        rr = r if r <= period - r else period - r
        ov[r] = cos(2.0 * M_PI * rr / period)
    return out


def cosine_sums(weights, shifts, long period):
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const long long[::1] sh = np.ascontiguousarray(shifts, dtype=np.int64)
    cdef const double[::1] table = cosine_table(period)
    cdef Py_ssize_t n = w.shape[0], m = sh.shape[0], i, k
    out = np.empty(m)
    cdef double[::1] ov = out
    cdef long long d, idx
    cdef double s, c
    with nogil:
        for i in range(m):
            d = sh[i] % period
            if d < 0:
                d += period
            s = 0.0
            c = 0.0
            idx = 0
            for k in range(n):
                _neumaier(w[k] * table[idx], &s, &c)
                idx += d
                if idx >= period:
                    idx -= period
            ov[i] = s + c
    return out


def jacobi_eigh(a, double tol=1e-14, int max_sweeps=100):
    am = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] A = am
    cdef Py_ssize_t n = A.shape[0]
    vm = np.eye(n)
    cdef double[:, ::1] V = vm
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double norm = 0.0, off, apq, theta, t, c, s, tau, akp, akq
    for p in range(n):
        for q in range(n):
            norm += A[p, q] * A[p, q]
    norm = sqrt(norm)
    if n < 2 or norm == 0.0:
        return np.diag(am).copy(), vm, True, 0
    with nogil:
        for sweep in range(1, max_sweeps + 1):
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if apq == 0.0:
                        continue
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    tau = s / (1.0 + c)
                    for k in range(n):
                        if k == p or k == q:
                            continue
                        akp = A[k, p]
                        akq = A[k, q]
                        A[k, p] = akp - s * (akq + tau * akp)
                        A[k, q] = akq + s * (akp - tau * akq)
                        A[p, k] = A[k, p]
                        A[q, k] = A[k, q]
                    A[p, p] = A[p, p] - t * apq
                    A[q, q] = A[q, q] + t * apq
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for k in range(n):
                        akp = V[k, p]
                        akq = V[k, q]
                        V[k, p] = akp - s * (akq + tau * akp)
                        V[k, q] = akq + s * (akp - tau * akq)
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += 2.0 * A[p, q] * A[p, q]
            if sqrt(off) <= tol * norm:
                with gil:
                    return np.diag(am).copy(), vm, True, sweep
    return np.diag(am).copy(), vm, False, max_sweeps
