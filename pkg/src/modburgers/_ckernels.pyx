# cython: language_level=3
"""Compiled hot loops: 2x2 block-tridiagonal solves and hat x Gaussian sums."""

import numpy as np
cimport numpy as cnp
from libc.math cimport erfc, exp, fabs, sqrt, floor, ceil, M_PI

cnp.import_array()

cdef double CUTOFF = 12.5  # Gaussian radius in units of sqrt(t): e^{-39} tail


def block_tridiag_solve(sub, diag, sup, rhs):
    """Solve a block-tridiagonal system with 2x2 blocks.

    ``sub[n]`` couples row block ``n + 1`` to ``n``, ``sup[n]`` couples ``n``
    to ``n + 1``.  ``rhs`` has shape ``(N, 2)`` or ``(N, 2, R)``.
    """
    cdef const double[:, :, ::1] L = np.ascontiguousarray(sub, dtype=np.float64)
    cdef double[:, :, ::1] D = np.array(diag, dtype=np.float64, order="C")
    cdef const double[:, :, ::1] U = np.ascontiguousarray(sup, dtype=np.float64)
    squeeze = np.ndim(rhs) == 2
    r_arr = np.array(rhs, dtype=np.float64, order="C")
    if squeeze:
        r_arr = r_arr[:, :, None].copy()
    cdef double[:, :, ::1] r = r_arr
    cdef Py_ssize_t N = D.shape[0], R = r.shape[2]
    cdef Py_ssize_t n, k
    cdef double a, b, c, d, det, m00, m01, m10, m11, x0, x1
    if L.shape[0] != N - 1 or U.shape[0] != N - 1 or r.shape[0] != N:
        raise ValueError("inconsistent block dimensions")
    # forward elimination; D is overwritten with the Schur complements
    for n in range(1, N):
        a = D[n - 1, 0, 0]; b = D[n - 1, 0, 1]
        c = D[n - 1, 1, 0]; d = D[n - 1, 1, 1]
        det = a * d - b * c
        if det == 0.0:
            raise ZeroDivisionError("singular pivot block")
        # m = sub[n-1] @ inv(D[n-1])
        m00 = (L[n - 1, 0, 0] * d - L[n - 1, 0, 1] * c) / det
        m01 = (-L[n - 1, 0, 0] * b + L[n - 1, 0, 1] * a) / det
        m10 = (L[n - 1, 1, 0] * d - L[n - 1, 1, 1] * c) / det
        m11 = (-L[n - 1, 1, 0] * b + L[n - 1, 1, 1] * a) / det
        D[n, 0, 0] -= m00 * U[n - 1, 0, 0] + m01 * U[n - 1, 1, 0]
        D[n, 0, 1] -= m00 * U[n - 1, 0, 1] + m01 * U[n - 1, 1, 1]
        D[n, 1, 0] -= m10 * U[n - 1, 0, 0] + m11 * U[n - 1, 1, 0]
        D[n, 1, 1] -= m10 * U[n - 1, 0, 1] + m11 * U[n - 1, 1, 1]
        for k in range(R):
            r[n, 0, k] -= m00 * r[n - 1, 0, k] + m01 * r[n - 1, 1, k]
            r[n, 1, k] -= m10 * r[n - 1, 0, k] + m11 * r[n - 1, 1, k]
    # back substitution in place
    for n in range(N - 1, -1, -1):
        a = D[n, 0, 0]; b = D[n, 0, 1]
        c = D[n, 1, 0]; d = D[n, 1, 1]
        det = a * d - b * c
        if det == 0.0:
            raise ZeroDivisionError("singular pivot block")
        for k in range(R):
            x0 = r[n, 0, k]
            x1 = r[n, 1, k]
            if n < N - 1:
                x0 -= U[n, 0, 0] * r[n + 1, 0, k] + U[n, 0, 1] * r[n + 1, 1, k]
                x1 -= U[n, 1, 0] * r[n + 1, 0, k] + U[n, 1, 1] * r[n + 1, 1, k]
            r[n, 0, k] = (d * x0 - b * x1) / det
            r[n, 1, k] = (-c * x0 + a * x1) / det
    out = np.asarray(r_arr)
    return out[:, :, 0] if squeeze else out


def gauss_cell_apply(values, double h, centers, double t, int kind=0):
    """Integrate the piecewise-linear interpolant of ``values`` against a Gaussian.

    ``values[m]`` sits at ``eta = m h``; the interpolant lives on
    ``[0, (len(values) - 1) h]``.  Returns ``sum_cells int f(eta) K(t, c - eta)``
    for each centre ``c`` with ``K = G`` (kind 0) or ``K = dG/dz`` (kind 1).
    """
    cdef const double[::1] f = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(np.atleast_1d(centers), dtype=np.float64)
    out_arr = np.zeros(c.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t ncell = f.shape[0] - 1
    cdef Py_ssize_t i, m, lo, hi
    cdef double ci, z1, z2, I0, I1, J0, J1, g1, g2, e1, e2, acc, radius
    cdef double s, inv4t, norm
    if t <= 0.0:
        raise ValueError("t must be positive")
    radius = CUTOFF * sqrt(t)
    s = 2.0 * sqrt(t)
    inv4t = 1.0 / (4.0 * t)
    norm = 1.0 / sqrt(4.0 * M_PI * t)
    with nogil:
        for i in range(c.shape[0]):
            ci = c[i]
            lo = <Py_ssize_t>floor((ci - radius) / h)
            hi = <Py_ssize_t>ceil((ci + radius) / h)
            if lo < 0:
                lo = 0
            if hi > ncell:
                hi = ncell
            acc = 0.0
            if hi <= lo:
                out[i] = acc
                continue
            # node values are shared by neighbouring cells: one exp and one
            # erfc (of |z|, the accurate tail) per node
            z2 = ci - lo * h
            g2 = norm * exp(-z2 * z2 * inv4t)
            e2 = erfc(fabs(z2) / s)
            for m in range(lo, hi):
                z1 = z2 - h
                g1 = norm * exp(-z1 * z1 * inv4t)
                e1 = erfc(fabs(z1) / s)
                # Phi(z2) - Phi(z1) for the N(0, 2t) law
                if z1 >= 0.0:
                    I0 = 0.5 * (e1 - e2)
                elif z2 <= 0.0:
                    I0 = 0.5 * (e2 - e1)
                else:
                    I0 = 1.0 - 0.5 * (e1 + e2)
                if kind == 0:
                    I1 = z2 * I0 + 2.0 * t * (g2 - g1)
                    acc += f[m] * (I0 - I1 / h) + f[m + 1] * (I1 / h)
                else:
                    J0 = g2 - g1
                    J1 = I0 - h * g1
                    acc += f[m] * (J0 - J1 / h) + f[m + 1] * (J1 / h)
                z2 = z1
                g2 = g1
                e2 = e1
            out[i] = acc
    return out_arr
