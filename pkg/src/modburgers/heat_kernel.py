"""Heat kernel, half-line Dirichlet solutions, the odd-sector exact solution and nu.

Half-line convolutions accept either a :class:`PerturbationField` (integrated
exactly as a piecewise-linear interpolant against the Gaussian) or a callable
``f(y, k)`` returning the k-th derivative, integrated by Gauss-Legendre
quadrature in the scaled variable ``z = (y - c) / (2 sqrt(t))``.
"""

from __future__ import annotations

import numpy as np

from ._backend import kernels
from .errors import InvalidInput
from .fields import GammaSignal, PerturbationField, as_time_function
from .quadrature import QuadratureSpec, gauss_legendre, time_rule

_DEFAULT_QUAD = QuadratureSpec()
NU_EDGE = 1e-9  # offset used for the one-sided traces nu_y(t, 0+-)
Z_CUT = 7.0


def gauss_kernel(t, x, deriv: int = 0):
    """``G(t, x) = (4 pi t)^{-1/2} exp(-x^2 / 4t)`` or its x-derivative."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise InvalidInput("heat kernel needs t > 0")
    x = np.asarray(x, dtype=float)
    g = np.exp(-x * x / (4.0 * t)) / np.sqrt(4.0 * np.pi * t)
    if deriv == 0:
        return g
    if deriv == 1:
        return -x / (2.0 * t) * g
    raise InvalidInput("deriv must be 0 or 1")


def kernel_norm_table(t: float) -> tuple[float, ...]:
    """``(|G|_1, |G|_2, |G|_inf, |G_x|_1, |G_x|_2, |G_x|_inf)`` at time ``t``."""
    if t <= 0:
        raise InvalidInput("heat kernel needs t > 0")
    pi = np.pi
    return (
        1.0,
        (8 * pi * t) ** -0.25,
        (4 * pi * t) ** -0.5,
        (pi * t) ** -0.5,
        0.5 * (8 * pi) ** -0.25 * t**-0.75,
        0.5 * (2 * pi * np.e) ** -0.5 / t,
    )


def _component(u0, k: int):
    """k-th derivative of ``u0`` as samples ``(values, h)`` or a callable of y."""
    if isinstance(u0, PerturbationField):
        u0.require(k)
        return (u0.values, u0.d1, u0.d2)[k], u0.grid_step
    if callable(u0):
        return (lambda y: u0(y, k)), None
    raise InvalidInput("initial data must be a PerturbationField or a callable f(y, k)")


def halfline_conv(src, centers, t: float, kind: int = 0, quad: QuadratureSpec = _DEFAULT_QUAD):
    """``int_0^inf f(eta) K(t, c - eta) d eta`` for each centre ``c``.

    ``K`` is ``G`` (kind 0) or ``dG/dz`` (kind 1); ``src`` comes from
    :func:`_component`.
    """
    data, h = src
    c = np.atleast_1d(np.asarray(centers, dtype=float))
    if h is not None:
        return kernels.gauss_cell_apply(data, h, c, t, kind)
    x, w = gauss_legendre()
    panels = quad.n_space
    out = np.empty(c.size)
    sq = 2.0 * np.sqrt(t)
    chunk = max(1, 200_000 // (panels * x.size))
    for i0 in range(0, c.size, chunk):
        cc = c[i0:i0 + chunk]
        z_lo = np.clip(-cc / sq, -Z_CUT, Z_CUT)
        width = (Z_CUT - z_lo) / panels
        starts = z_lo[:, None] + width[:, None] * np.arange(panels)[None, :]
        z = (starts[:, :, None] + width[:, None, None] * x[None, None, :]).reshape(cc.size, -1)
        wz = (width[:, None] * np.tile(w, panels)[None, :]) * np.exp(-z * z) / np.sqrt(np.pi)
        vals = data(cc[:, None] + sq * z)
        if kind == 1:
            wz = wz * z / np.sqrt(t)
        out[i0:i0 + chunk] = np.sum(vals * wz, axis=1)
    return out


def _shape_like(x, out):
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def dirichlet_halfline(v0, t: float, x, quad: QuadratureSpec = _DEFAULT_QUAD):
    """Solution at ``(t, x)`` of ``v_t = v_xx`` on x > 0, ``v(t, 0) = 0``, ``v(0) = v0``."""
    if t <= 0:
        raise InvalidInput("t must be positive")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0):
        raise InvalidInput("x must be nonnegative")
    src = _component(v0, 0)
    out = halfline_conv(src, xa, t, 0, quad) - halfline_conv(src, -xa, t, 0, quad)
    return _shape_like(x, out)


def _duhamel_image(f, t: float, x: float, quad: QuadratureSpec) -> float:
    s, ws = time_rule(t, quad)
    tau = t - s
    x_ref, w_ref = gauss_legendre()
    total = 0.0
    for sign in (1.0, -1.0):
        # y = sign * x + 2 sqrt(s) z restricted to y > 0
        sq = 2.0 * np.sqrt(s)
        z_lo = np.clip(-sign * x / sq, -Z_CUT, Z_CUT)
        width = (Z_CUT - z_lo) / quad.n_space
        starts = z_lo[:, None] + width[:, None] * np.arange(quad.n_space)[None, :]
        z = (starts[:, :, None] + width[:, None, None] * x_ref[None, None, :]).reshape(s.size, -1)
        wz = width[:, None] * np.tile(w_ref, quad.n_space)[None, :] * np.exp(-z * z) / np.sqrt(np.pi)
        y = sign * x + sq[:, None] * z
        inner = np.sum(f(np.broadcast_to(tau[:, None], y.shape), y) * wz, axis=1)
        total += sign * np.dot(ws, inner)
    return total


def dirichlet_halfline_inhomog(v0, f, t: float, x, quad: QuadratureSpec = _DEFAULT_QUAD):
    """As :func:`dirichlet_halfline` with a source ``f(tau, y)`` (vectorised callable)."""
    base = np.atleast_1d(dirichlet_halfline(v0, t, x, quad))
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    extra = np.array([_duhamel_image(f, t, xi, quad) for xi in xa])
    return _shape_like(x, base + extra)


def odd_exact_solution(u0, t: float, x, deriv: int = 0, quad: QuadratureSpec = _DEFAULT_QUAD):
    """Exact solution of ``u_t = u_x + u_xx`` on x > 0 with ``u = 0`` and ``u_x + u_xx = 0`` at 0.

    ``u0`` is a :class:`PerturbationField` (with ``d1``/``d2`` for derivatives)
    or a callable ``u0(y, k)``; ``u0(0)`` must vanish.
    """
    if t <= 0:
        raise InvalidInput("t must be positive")
    if deriv not in (0, 1, 2):
        raise InvalidInput("deriv must be 0, 1 or 2")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0):
        raise InvalidInput("x must be nonnegative")
    c1, c2 = xa + t, t - xa
    ex = np.exp(-xa)

    def pair(k):
        src = _component(u0, k)
        return halfline_conv(src, c1, t, 0, quad), halfline_conv(src, c2, t, 0, quad)

    a0, b0 = pair(0)
    if deriv == 0:
        out = a0 - ex * b0
    else:
        a1, b1 = pair(1)
        if deriv == 1:
            out = a1 + ex * (b1 + b0)
        else:
            a2, b2 = pair(2)
            out = a2 - ex * (b2 + 2.0 * b1 + b0)
    return _shape_like(x, out)


def _check_horizon(gamma, t):
    if isinstance(gamma, GammaSignal) and t > gamma.t_end * (1 + 1e-12) + 1e-14:
        raise InvalidInput("gamma signal does not cover [0, t]")


def nu_solution(gamma, t: float, y, deriv: int = 0, quad: QuadratureSpec = _DEFAULT_QUAD):
    """``nu(t, y) = 2 int_0^t gamma(tau) G(t - tau, y + t - tau) d tau`` or ``nu_y``."""
    if t <= 0:
        raise InvalidInput("t must be positive")
    if deriv not in (0, 1):
        raise InvalidInput("deriv must be 0 or 1")
    _check_horizon(gamma, t)
    g = as_time_function(gamma)
    s, ws = time_rule(t, quad)
    gw = ws * g(t - s)
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    z = ya[:, None] + s[None, :]
    kern = 2.0 * gauss_kernel(s[None, :], z, deriv)
    return _shape_like(y, kern @ gw)


def nu_boundary_residual(gamma, t: float, side: int, quad: QuadratureSpec = _DEFAULT_QUAD) -> float:
    """``nu_y(t, 0+-) + nu(t, 0)/2 +- gamma(t)``; the one-sided trace is taken at ``+-1e-9``."""
    if side not in (1, -1):
        raise InvalidInput("side must be +1 or -1")
    g = as_time_function(gamma)
    nu_y = nu_solution(gamma, t, side * NU_EDGE, 1, quad)
    nu0 = nu_solution(gamma, t, 0.0, 0, quad)
    return float(nu_y + 0.5 * nu0 + side * float(g(np.array([t]))[0]))
