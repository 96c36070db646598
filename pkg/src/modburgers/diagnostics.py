"""Norms, energy/positivity/decay checks, interface residuals and xi-infinity fits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .fields import PerturbationField
from .fd_solver import Trajectory


@dataclass(frozen=True)
class NormReport:
    l2: float
    h1: float | None
    h2: float | None
    linf: float
    w1inf: float | None
    w2inf: float | None
    alpha_weighted_w2inf: float | None = None
    alpha: float | None = None


def _trap_sq(v: np.ndarray, h: float) -> float:
    return float(np.trapezoid(v * v, dx=h))


def discrete_norms(field: PerturbationField, alpha: float | None = None) -> NormReport:
    """Trapezoidal L2-type norms and nodal sup norms.

    ``H^k`` norms are square roots of summed squared L2 norms of the
    derivatives; ``W^{k,inf}`` norms are the maximum of the derivative sup
    norms.  With ``alpha`` the weighted ``W^{2,inf}`` norm of ``e^{alpha y} u``
    is added (needs d1 and d2).
    """
    h = field.grid_step
    v, d1, d2 = field.values, field.d1, field.d2
    l2sq = _trap_sq(v, h)
    linf = float(np.abs(v).max())
    h1 = h2 = w1 = w2 = weighted = None
    if d1 is not None:
        h1sq = l2sq + _trap_sq(d1, h)
        h1 = np.sqrt(h1sq)
        w1 = max(linf, float(np.abs(d1).max()))
        if d2 is not None:
            h2 = np.sqrt(h1sq + _trap_sq(d2, h))
            w2 = max(w1, float(np.abs(d2).max()))
    if alpha is not None and d1 is not None and d2 is not None:
        e = np.exp(alpha * field.y)
        parts = (e * v, e * (d1 + alpha * v), e * (d2 + 2 * alpha * d1 + alpha**2 * v))
        weighted = max(float(np.abs(p).max()) for p in parts)
    return NormReport(float(np.sqrt(l2sq)), h1, h2, linf, w1, w2, weighted, alpha)


# -- energy ---------------------------------------------------------------

def energy_violations(energy: np.ndarray, tol: float) -> list[tuple[int, float]]:
    """Steps ``k`` (1-based level index) where ``E_k - E_{k-1} > tol``."""
    inc = np.diff(np.asarray(energy, dtype=float))
    return [(int(k) + 1, float(inc[k])) for k in np.flatnonzero(inc > tol)]


def is_odd_run(traj: Trajectory) -> bool:
    return bool(traj.snapshots) and not np.any(traj.snapshots[0].v_minus)


def energy_monotonicity_report(traj: Trajectory, tol: float | None = None) -> list[tuple[int, float]]:
    """Per-step increases of the H1 energy beyond ``tol``.

    Default tolerance: 1e-10 in the odd sector, ``10 tau^2`` otherwise.  In
    the odd sector ``u- = -u+`` so the stored sum is twice the H1 energy of u.
    """
    energy = traj.norm_series["h1_energy"]
    if is_odd_run(traj):
        energy = 0.5 * energy
        tol = 1e-10 if tol is None else tol
    elif tol is None:
        tol = 10.0 * traj.config.tau**2
    return energy_violations(energy, tol)


# -- decay bounds ---------------------------------------------------------

def decay_bound_rhs(t: float, l2_norms: Sequence[float]) -> tuple[float, float, float]:
    """Right-hand sides of the sup-norm decay bounds for ``u, u_x, u_xx``."""
    n0, n1, n2 = l2_norms
    k = (8.0 * np.pi * t) ** -0.25
    return 2.0 * k * n0, k * (2.0 * n1 + n0), k * (2.0 * n2 + 2.0 * n1 + n0)


@dataclass(frozen=True)
class BoundCheck:
    t: float
    order: int
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs


def decay_bound_check(sup_sampler: Callable[[float], Sequence[float]],
                      l2_norms: Sequence[float], times: Sequence[float]) -> list[BoundCheck]:
    """Compare ``sup_sampler(t) = (|u|_inf, |u_x|_inf, |u_xx|_inf)`` with the bounds.

    ``l2_norms`` are ``(|u0|_2, |u0'|_2, |u0''|_2)``; the bounds are stated for t >= 1.
    """
    out = []
    for t in times:
        if t < 1.0:
            raise ValueError("decay bounds are stated for t >= 1")
        lhs = sup_sampler(t)
        for order, (a, b) in enumerate(zip(lhs, decay_bound_rhs(t, l2_norms))):
            out.append(BoundCheck(float(t), order, float(a), float(b)))
    return out


def exact_sup_sampler(u0, x: np.ndarray, quad=None):
    """Sup norms of the exact odd-sector solution and its derivatives over ``x``."""
    from .heat_kernel import odd_exact_solution
    from .quadrature import QuadratureSpec

    quad = QuadratureSpec() if quad is None else quad

    def sampler(t):
        return tuple(float(np.abs(odd_exact_solution(u0, t, x, d, quad)).max()) for d in range(3))

    return sampler


# -- interface residuals ----------------------------------------------------

def one_sided_derivatives(u: np.ndarray, h: float) -> tuple[float, float]:
    """``u'(0+)`` and ``u''(0+)`` from ``u(0) = 0`` and the samples at h, 2h, 3h."""
    u1, u2, u3 = u[0], u[1], u[2]
    d1 = (18.0 * u1 - 9.0 * u2 + 2.0 * u3) / (6.0 * h)
    d2 = (-5.0 * u1 + 4.0 * u2 - u3) / (h * h)
    return d1, d2


@dataclass(frozen=True)
class InterfaceResiduals:
    times: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    gamma_plus: np.ndarray
    gamma_minus: np.ndarray


def interface_residuals(traj: Trajectory) -> InterfaceResiduals:
    """Mismatch of the two one-sided interface-velocity formulas (r1) and the jump-condition residual (r2)."""
    h = traj.config.h
    rows = []
    for s in traj.snapshots:
        p1, p2 = one_sided_derivatives(s.u_plus, h)
        m1, m2 = one_sided_derivatives(s.u_minus, h)
        gp = -(p1 + p2) / (1.0 + p1)
        gm = -(m1 + m2) / (1.0 - m1)
        rows.append((s.k * traj.config.tau, gp - gm, p2 - m2 + 2.0 * p1, gp, gm))
    arr = np.array(rows).reshape(-1, 5)
    return InterfaceResiduals(*arr.T)


# -- xi at infinity -------------------------------------------------------

def fit_xi_infinity(xi_series, gamma_series, times=None) -> tuple[float, float]:
    """``(xi(T), xi(T) + gamma(T)/lambda)`` with ``lambda`` from log|gamma| on the final third.

    Falls back to ``xi(T)`` if gamma changes sign or vanishes there, the
    fitted rate is not positive, or the fit explains too little variance.
    """
    xi = np.asarray(xi_series, dtype=float)
    gam = np.asarray(gamma_series, dtype=float)
    t = np.arange(gam.size, dtype=float) if times is None else np.asarray(times, dtype=float)
    xi_T = float(xi[-1])
    tail = t >= t[0] + (t[-1] - t[0]) * 2.0 / 3.0
    g, tt = gam[tail], t[tail]
    if g.size < 3 or np.any(g == 0) or not (np.all(g > 0) or np.all(g < 0)):
        return xi_T, xi_T
    logg = np.log(np.abs(g))
    slope, icpt = np.polyfit(tt, logg, 1)
    resid = logg - (slope * tt + icpt)
    spread = np.sum((logg - logg.mean()) ** 2)
    lam = -slope
    if not np.isfinite(lam) or lam <= 0 or spread == 0 or 1.0 - resid @ resid / spread < 0.9:
        return xi_T, xi_T
    return xi_T, xi_T + float(gam[-1]) / lam


# -- positivity -----------------------------------------------------------

def positivity_check(traj: Trajectory) -> list[tuple[float, float, float]]:
    """``(t, x, w)`` at every node with ``|x| > h`` where ``sign(w) != sign(x)``.

    ``x`` is the co-moving coordinate (lab position minus xi(t)).
    """
    h = traj.config.h
    bad = []
    for s in traj.snapshots:
        x, _, w = traj.profile(s)
        with np.errstate(invalid="ignore"):
            mask = (np.abs(x) > h) & ~(np.sign(w) == np.sign(x))
        t = s.k * traj.config.tau
        bad.extend((t, float(xx), float(ww)) for xx, ww in zip(x[mask], w[mask]))
    return bad


# -- inequality utilities (used by the property tests) ----------------------

def young_sup_check(f: np.ndarray, g: np.ndarray, h: float) -> tuple[float, float]:
    """``(|f*g|_inf, |f|_2 |g|_2)`` for grid samples with spacing h."""
    conv = h * np.convolve(f, g)
    return float(np.abs(conv).max()), float(np.sqrt(h * f @ f) * np.sqrt(h * g @ g))


def young_time_check(beta: np.ndarray, gamma: np.ndarray, dt: float) -> tuple[float, float]:
    """``(|beta conv gamma|_1, |beta|_1 |gamma|_1)`` for Volterra convolution on [0, T]."""
    n = min(beta.size, gamma.size)
    conv = dt * np.convolve(beta[:n], gamma[:n])[:n]
    return float(dt * np.abs(conv).sum()), float(dt * np.abs(beta[:n]).sum() * dt * np.abs(gamma[:n]).sum())


def convolution_bound_constant(s: float, T: float) -> float:
    return max(T ** (1.0 - s) / (1.0 - s), 1.0 + 1.0 / (1.0 - s))


def convolution_bound_check(cells: np.ndarray, dt: float, s: float) -> tuple[float, float]:
    """``(int_0^T |gamma| (T - tau)^{-s} d tau, C_s max(|gamma|_1, |gamma|_inf))``.

    ``gamma`` is piecewise constant with value ``cells[i]`` on
    ``[i dt, (i+1) dt)``; the weakly singular integral is exact.
    """
    cells = np.abs(np.asarray(cells, dtype=float))
    T = dt * cells.size
    edges = T - dt * np.arange(cells.size + 1)
    edges[-1] = 0.0
    w = (edges[:-1] ** (1 - s) - edges[1:] ** (1 - s)) / (1 - s)
    lhs = float(cells @ w)
    rhs = convolution_bound_constant(s, T) * max(float(cells.sum() * dt), float(cells.max()))
    return lhs, rhs
