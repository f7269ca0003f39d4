"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and contracts as the compiled ``_ckernels`` module; used
when the extension is unavailable or ``SUBLATTICE_EE_PURE_PYTHON`` is set.
"""

import math

import numpy as np


def compensated_sum(x):
    return math.fsum(np.asarray(x, dtype=float).ravel().tolist())


def residue_sums(x, period):
    """Sum ``x[k]`` over each residue class ``k mod period``."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if period <= 0 or n % period:
        raise ValueError("period must divide len(x)")
    cols = x.reshape(n // period, period).T
    return np.array([math.fsum(c.tolist()) for c in cols])


def cosine_table(period):
    """cos(2*pi*r/period) for r = 0..period-1, exactly symmetric in r <-> period-r."""
    r = np.arange(period)
    r = np.minimum(r, period - r)
    return np.cos(2.0 * np.pi * r / period)


def cosine_sums(weights, shifts, period):
    """out[i] = sum_k weights[k] * cos(2*pi*shifts[i]*k / period).

    Phases are reduced to integers mod ``period`` before the cosine lookup so
    that no accuracy is lost for large ``k``.
    """
    w = np.asarray(weights, dtype=float)
    shifts = np.asarray(shifts, dtype=np.int64)
    table = cosine_table(period)
    k = np.arange(w.shape[0], dtype=np.int64)
    out = np.empty(shifts.shape[0])
    for i, d in enumerate(shifts):
        idx = (int(d) % period) * k % period
        out[i] = math.fsum((w * table[idx]).tolist())
    return out


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, converged, sweeps)``; eigenvalues are
    unsorted (diagonal order), eigenvectors are columns.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    norm = math.sqrt(float(np.sum(a * a)))
    if n < 2 or norm == 0.0:
        return np.diag(a).copy(), v, True, 0
    target = tol * norm
    for sweep in range(1, max_sweeps + 1):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = ap - s * (aq + tau * ap)
                a[:, q] = aq + s * (ap - tau * aq)
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = ap[p] - t * apq
                a[q, q] = aq[q] + t * apq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp - s * (vq + tau * vp)
                v[:, q] = vq + s * (vp - tau * vq)
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= target:
            return np.diag(a).copy(), v, True, sweep
    return np.diag(a).copy(), v, False, max_sweeps
