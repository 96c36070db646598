"""Pure numpy/scipy versions of the compiled kernels (same signatures)."""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded
from scipy.special import erfc

CUTOFF = 12.5


def block_tridiag_solve(sub, diag, sup, rhs):
    """Solve a block-tridiagonal system with 2x2 blocks via a banded LU."""
    sub = np.asarray(sub, dtype=float)
    diag = np.asarray(diag, dtype=float)
    sup = np.asarray(sup, dtype=float)
    N = diag.shape[0]
    if sub.shape[0] != N - 1 or sup.shape[0] != N - 1:
        raise ValueError("inconsistent block dimensions")
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape[0] != N:
        raise ValueError("inconsistent block dimensions")
    squeeze = rhs.ndim == 2
    r = rhs.reshape(2 * N, -1)
    # interleaved unknowns (p0, m0, p1, m1, ...) give bandwidth 3 each side
    ab = np.zeros((7, 2 * N))
    idx = np.arange(N)
    for a in range(2):
        for b in range(2):
            rows, cols = 2 * idx + a, 2 * idx + b
            ab[3 + rows - cols, cols] = diag[:, a, b]
            rows, cols = 2 * idx[1:] + a, 2 * idx[:-1] + b
            ab[3 + rows - cols, cols] = sub[:, a, b]
            rows, cols = 2 * idx[:-1] + a, 2 * idx[1:] + b
            ab[3 + rows - cols, cols] = sup[:, a, b]
    x = solve_banded((3, 3), ab, r)
    x = x.reshape(N, 2, -1)
    return x[:, :, 0] if squeeze else x


def _cdf_diff(z2, z1, t):
    s = 2.0 * np.sqrt(t)
    out = 1.0 - 0.5 * (erfc(z2 / s) + erfc(-z1 / s))
    right = z1 >= 0.0
    left = z2 <= 0.0
    out[right] = 0.5 * (erfc(z1[right] / s) - erfc(z2[right] / s))
    out[left] = 0.5 * (erfc(-z2[left] / s) - erfc(-z1[left] / s))
    return out


def gauss_cell_apply(values, h, centers, t, kind=0):
    """Piecewise-linear interpolant of ``values`` integrated against ``G`` or ``G_z``."""
    f = np.asarray(values, dtype=float)
    c = np.atleast_1d(np.asarray(centers, dtype=float))
    if t <= 0.0:
        raise ValueError("t must be positive")
    ncell = f.size - 1
    radius = CUTOFF * np.sqrt(t)
    norm = 1.0 / np.sqrt(4.0 * np.pi * t)
    out = np.zeros(c.size)
    for i, ci in enumerate(c):
        lo = max(int(np.floor((ci - radius) / h)), 0)
        hi = min(int(np.ceil((ci + radius) / h)), ncell)
        if hi <= lo:
            continue
        m = np.arange(lo, hi)
        z2 = ci - m * h
        z1 = z2 - h
        g1 = norm * np.exp(-z1 * z1 / (4.0 * t))
        g2 = norm * np.exp(-z2 * z2 / (4.0 * t))
        I0 = _cdf_diff(z2, z1, t)
        if kind == 0:
            I1 = z2 * I0 + 2.0 * t * (g2 - g1)
            out[i] = np.dot(f[lo:hi], I0 - I1 / h) + np.dot(f[lo + 1:hi + 1], I1 / h)
        else:
            J0 = g2 - g1
            J1 = I0 - h * g1
            out[i] = np.dot(f[lo:hi], J0 - J1 / h) + np.dot(f[lo + 1:hi + 1], J1 / h)
    return out
