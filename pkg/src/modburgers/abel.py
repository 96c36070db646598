"""The operator M and closed-form inversions of the associated Abel-type equations.

``M(gamma)(t) = int_0^t gamma(tau) k(t - tau) d tau`` with

    k(s) = (pi s)^{-1/2} - (4 pi s)^{-1/2} int_0^inf e^{-eta/2} e^{-eta^2/4s} d eta
         = (pi s)^{-1/2} - erfcx(sqrt(s)/2) / 2.

Three data types are supported: ``from_f`` (right-hand side generated by an
initial profile f), ``from_g`` (a space-time source g) and ``local`` (a
time signal h).  Each solver has a residual check that substitutes the
solution back through :func:`m_operator`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import erfcx

from .errors import InvalidInput
from .fields import GammaSignal, PerturbationField, as_time_function
from .heat_kernel import _component, halfline_conv
from .quadrature import QuadratureSpec, composite_gl, gaussian_z_rule, time_rule

KINDS = ("from_f", "from_g", "local")
F0_TOL = 1e-10
Z_MAX = 7.0


@dataclass(frozen=True, eq=False)
class AbelProblem:
    kind: str
    f: object = None
    g: Callable | None = None
    h: object = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"kind must be one of {KINDS}")
        given = {name for name in ("f", "g", "h") if getattr(self, name) is not None}
        expected = {"from_f": {"f"}, "from_g": {"g"}, "local": {"h"}}[self.kind]
        if given != expected:
            raise InvalidInput(f"kind={self.kind} needs exactly {sorted(expected)}")
        if self.kind == "from_f":
            f0 = self.f.values[0] if isinstance(self.f, PerturbationField) else self.f(np.array(0.0), 0)
            if abs(float(f0)) > F0_TOL:
                raise InvalidInput(f"f(0) = {float(f0):.3e} must vanish")
            if isinstance(self.f, PerturbationField):
                self.f.require(1)


def m_kernel(s):
    """Kernel ``k(s)`` of M (weakly singular at s = 0)."""
    s = np.asarray(s, dtype=float)
    return 1.0 / np.sqrt(np.pi * s) - 0.5 * erfcx(0.5 * np.sqrt(s))


def m_inner_quadrature(s, quad: QuadratureSpec = QuadratureSpec()):
    """Fallback for the inner integral ``(4 pi s)^{-1/2} int e^{-eta/2 - eta^2/4s}``.

    Substituting ``eta = 2 sqrt(s) z`` leaves ``pi^{-1/2} int_0^inf e^{-sqrt(s) z} e^{-z^2} dz``.
    """
    z, w = gaussian_z_rule(quad, 0.0, Z_MAX)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    return (np.exp(-np.sqrt(s)[:, None] * z[None, :]) @ w) / np.sqrt(np.pi)


def m_operator(gamma, t: float, quad: QuadratureSpec = QuadratureSpec(), analytic: bool = True) -> float:
    """``M(gamma)(t)``; ``gamma`` is a GammaSignal or a vectorised callable."""
    if t <= 0:
        raise InvalidInput("t must be positive")
    g = as_time_function(gamma)
    s, w = time_rule(t, quad, both_ends=True)
    if analytic:
        k = m_kernel(s)
    else:
        k = 1.0 / np.sqrt(np.pi * s) - m_inner_quadrature(s, quad)
    return float(np.dot(w * k, g(t - s)))


# -- from_f ---------------------------------------------------------------

def _f_sources(f):
    """Sources for ``f`` and ``f' + f/2`` accepted by :func:`halfline_conv`."""
    if isinstance(f, PerturbationField):
        return (f.values, f.grid_step), (f.d1 + 0.5 * f.values, f.grid_step)
    return _component(f, 0), (lambda y: f(y, 1) + 0.5 * f(y, 0), None)


def solve_abel_from_f(problem: AbelProblem, t, form: str = "equivalent"):
    """``gamma(t) = (4 pi t)^{-1/2} int (f' + f/2) e^{-eta^2/4t} d eta``.

    ``form="kernel"`` uses the undifferentiated ``(eta + t)/(2t)`` form instead.
    """
    if problem.kind != "from_f":
        raise InvalidInput("problem kind must be from_f")
    src_f, src_df = _f_sources(problem.f)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise InvalidInput("t must be positive")
    out = np.empty(ts.size)
    for i, ti in enumerate(ts):
        if form == "equivalent":
            out[i] = halfline_conv(src_df, 0.0, ti, 0, problem.quad)[0]
        elif form == "kernel":
            out[i] = (0.5 * halfline_conv(src_f, 0.0, ti, 0, problem.quad)[0]
                      + halfline_conv(src_f, 0.0, ti, 1, problem.quad)[0])
        else:
            raise InvalidInput("form must be 'equivalent' or 'kernel'")
    return float(out[0]) if np.ndim(t) == 0 else out


def _rhs_from_f(problem: AbelProblem, t: float) -> float:
    src_f, _ = _f_sources(problem.f)
    return float(halfline_conv(src_f, 0.0, t, 0, problem.quad)[0])


# -- from_g ---------------------------------------------------------------

def _g_double(problem: AbelProblem, t: float, weight: Callable) -> float:
    """``pi^{-1/2} int_0^{sqrt t} int_0^inf g(t - s^2, 2 s z) weight(s, z) e^{-z^2} dz ds``."""
    quad = problem.quad
    sig, ws = composite_gl(0.0, np.sqrt(t), max(quad.n_time // 8, 2))
    z, wz = gaussian_z_rule(quad, 0.0, Z_MAX)
    S, Z = np.meshgrid(sig, z, indexing="ij")
    vals = problem.g(t - S * S, 2.0 * S * Z) * weight(S, Z)
    return float(ws @ vals @ wz) / np.sqrt(np.pi)


def solve_abel_from_g(problem: AbelProblem, t):
    """Double convolution of g with the ``(eta + s)/(2 s) G(s, eta)`` kernel, s = t - tau."""
    if problem.kind != "from_g":
        raise InvalidInput("problem kind must be from_g")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise InvalidInput("t must be positive")
    out = np.array([_g_double(problem, ti, lambda s, z: s + 2.0 * z) for ti in ts])
    return float(out[0]) if np.ndim(t) == 0 else out


def _rhs_from_g(problem: AbelProblem, t: float) -> float:
    return _g_double(problem, t, lambda s, z: 2.0 * s)


# -- local ----------------------------------------------------------------

def _sqrt_kernel_integral(h, t: float, quad: QuadratureSpec) -> float:
    """``int_0^t h(tau) (4 pi (t - tau))^{-1/2} d tau`` via ``t - tau = sigma^2``."""
    if t == 0:
        return 0.0
    sig, w = composite_gl(0.0, np.sqrt(t), max(quad.n_time // 2, 2))
    return float(w @ h(t - sig * sig)) / np.sqrt(np.pi)


def solve_abel_local(problem: AbelProblem, t):
    """``gamma(t) = h(t)/2 + (1/2) int_0^t h(tau) (4 pi (t - tau))^{-1/2} d tau``."""
    if problem.kind != "local":
        raise InvalidInput("problem kind must be local")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0):
        raise InvalidInput("t must be nonnegative")
    if isinstance(problem.h, GammaSignal) and np.any(ts > problem.h.t_end * (1 + 1e-12)):
        raise InvalidInput("h does not cover the requested times")
    h = as_time_function(problem.h)
    out = np.array([0.5 * float(h(np.array([ti]))[0]) + 0.5 * _sqrt_kernel_integral(h, ti, problem.quad)
                    for ti in ts])
    return float(out[0]) if np.ndim(t) == 0 else out


def _rhs_local(problem: AbelProblem, t: float) -> float:
    return _sqrt_kernel_integral(as_time_function(problem.h), t, problem.quad)


# -- residuals --------------------------------------------------------------

_SOLVERS = {"from_f": solve_abel_from_f, "from_g": solve_abel_from_g, "local": solve_abel_local}
_RHS = {"from_f": _rhs_from_f, "from_g": _rhs_from_g, "local": _rhs_local}


def solve(problem: AbelProblem, t):
    return _SOLVERS[problem.kind](problem, t)


def abel_residual(problem: AbelProblem, t: float, gamma: Callable | None = None) -> float:
    """``M(gamma)(t)`` minus the right-hand side; ``gamma`` defaults to the closed-form solution."""
    if gamma is None:
        gamma = lambda tau: solve(problem, np.asarray(tau, dtype=float))
    return m_operator(gamma, t, problem.quad) - _RHS[problem.kind](problem, t)
