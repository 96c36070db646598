"""Fixed-point solver for the coupled u+- / gamma integral equations on a short horizon.

The field map is ``u+- = u1+- + u2 +- u3[u+-]`` where ``u1`` propagates the
initial data, ``u2`` is the response to the ``gamma e^{-y}`` source and ``u3``
the response to ``gamma u_y``.  All three, together with their first and
second y-derivatives, are written as time convolutions of hat-interpolated
data against kernels in closed form (derivatives come from differentiated
kernels, never from differencing samples).

Discretisation:
  * space: fields are piecewise linear in y on ``y_n = n h``; hat functions are
    integrated exactly against Gaussians, giving Toeplitz (``y - eta``) and
    Hankel (``y + eta``) weight vectors that are applied with FFTs;
  * time: data are piecewise linear in tau except on the first interval
    [0, dt], where they are linear in sqrt(tau) (gamma and the boundary traces
    start like a + b sqrt(t)); per time lag the kernel is integrated against
    the basis functions (graded sigma = sqrt(s) panels at s = 0,
    Gauss-Legendre elsewhere).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.fft import fft, ifft, irfft, next_fast_len, rfft
from scipy.special import erfc

from .diagnostics import discrete_norms
from .errors import InvalidInput, NonConvergence
from .fields import GammaSignal, PerturbationField
from .heat_kernel import _component, halfline_conv, odd_exact_solution
from .quadrature import QuadratureSpec, composite_gl, graded_rule

SCHEMES = ("alternating", "nested")
CONTINUITY_TOL = 1e-10


@dataclass(frozen=True)
class PicardConfig:
    T: float = 0.5
    tol: float = 1e-4
    max_iter: int = 40
    quad: QuadratureSpec = field(default_factory=lambda: QuadratureSpec(y_max=15.0, n_space=16))
    K: int = 128
    grid_step: float = 0.02
    scheme: str = "alternating"
    norm_limit: float = 0.5

    def __post_init__(self):
        if not self.T > 0:
            raise InvalidInput("T must be positive")
        if not self.tol > 0:
            raise InvalidInput("tol must be positive")
        if self.max_iter < 1 or self.K < 1:
            raise InvalidInput("max_iter and K must be >= 1")
        if not 0 < self.grid_step < self.quad.y_max / 8:
            raise InvalidInput("grid_step must be positive and leave at least 8 cells")
        if self.scheme not in SCHEMES:
            raise InvalidInput(f"scheme must be one of {SCHEMES}")

    @property
    def dt(self) -> float:
        return self.T / self.K

    @property
    def M(self) -> int:
        return int(round(self.quad.y_max / self.grid_step))


@dataclass(frozen=True, eq=False)
class PicardState:
    """``u_plus[j, k, n]``: k-th y-derivative (k = 0, 1, 2) at ``t_j``, ``y_n``."""

    u_plus: np.ndarray
    u_minus: np.ndarray
    gamma: GammaSignal
    grid_step: float

    def __post_init__(self):
        if self.u_plus.shape != self.u_minus.shape or self.u_plus.ndim != 3 or self.u_plus.shape[1] != 3:
            raise InvalidInput("u_plus/u_minus must share a (K+1, 3, M+1) shape")
        if self.gamma.values.size != self.u_plus.shape[0]:
            raise InvalidInput("gamma must live on the same time grid")

    def field(self, sign: int, j: int) -> PerturbationField:
        u = self.u_plus if sign > 0 else self.u_minus
        return PerturbationField(self.grid_step, u[j, 0], u[j, 1], u[j, 2])

    @property
    def times(self) -> np.ndarray:
        return self.gamma.times


@dataclass
class PicardReport:
    iterations: int
    converged: bool
    changes: list
    continuity_residual: np.ndarray
    interface_residual: np.ndarray
    dynamic_residual_plus: np.ndarray
    dynamic_residual_minus: np.ndarray
    data_norm: float


# -- closed-form kernel pieces ------------------------------------------------

def _gauss(s, z):
    return np.exp(-z * z / (4.0 * s)) / np.sqrt(4.0 * np.pi * s)


def _phi(s, z):
    return 0.5 * erfc(-z / (2.0 * np.sqrt(s)))


def _psi(s, z):
    return z * _phi(s, z) + 2.0 * s * _gauss(s, z)


def _hat_g(s, x, h):
    """``int hat(eta) G(s, x - eta)``, hat of half-width h centred at 0."""
    return (_psi(s, x + h) - 2.0 * _psi(s, x) + _psi(s, x - h)) / h


def _hat_gz(s, x, h):
    return (_phi(s, x + h) - 2.0 * _phi(s, x) + _phi(s, x - h)) / h


def _half_g(s, x, h):
    """``int_0^h (1 - eta/h) G(s, x - eta)`` (the half hat at eta = 0) and its G_z analogue."""
    z2, z1 = x, x - h
    g1, g2 = _gauss(s, z1), _gauss(s, z2)
    i0 = _phi(s, z2) - _phi(s, z1)
    i1 = z2 * i0 + 2.0 * s * (g2 - g1)
    j1 = i0 - h * g1
    return i0 - i1 / h, (g2 - g1) - j1 / h


def _lag_rule(lag: int, dt: float):
    """Nodes/weights on ``s in [lag dt, (lag + 1) dt]`` and the hat fractions theta."""
    if lag == 0:
        s, w = graded_rule(dt)
    else:
        s, w = composite_gl(lag * dt, (lag + 1) * dt, 1)
    return s, w, (s - lag * dt) / dt


def _first_interval_rule(lag: int, dt: float):
    """Like :func:`_lag_rule` for the interval tau in [0, dt] seen at lag ``lag``.

    Returns ``rho = sqrt(tau / dt)``; the basis weights are rho (for the
    value at dt) and 1 - rho (for the value at 0).  tau = dt rho^2 removes
    the square-root endpoint; at lag 0 the s = 0 end is graded as well.
    """
    end = (lag + 1) * dt
    if lag == 0:
        s1, w1 = graded_rule(0.5 * dt)
        r2, v2 = composite_gl(0.0, np.sqrt(0.5), 2)
        s2, w2 = dt * (1.0 - r2 * r2), 2.0 * dt * r2 * v2
        s, w = np.concatenate([s1, s2]), np.concatenate([w1, w2])
    else:
        r, v = composite_gl(0.0, 1.0, 2)
        s, w = end - dt * r * r, 2.0 * dt * r * v
    return s, w, np.sqrt(np.clip((end - s) / dt, 0.0, 1.0))


class _LagKernels:
    """Per-lag kernels integrated against the time basis functions.

    Row 0/1: hat halves ``A_l`` (weight 1 - theta) and ``B_l`` (theta) on a
    generic interval; rows 2/3: the sqrt basis on the first interval.
    """

    SPECTRAL = ("TG", "TGz", "HG", "HGz")
    NODAL = ("bTG", "bTGz", "bHG", "bHGz", "P", "Py", "Pyy", "G2", "G2z")

    def __init__(self, M: int, h: float, K: int, dt: float):
        self.M, self.h, self.K, self.dt = M, h, K, dt
        self.nfft = next_fast_len(3 * M + 2)
        y = h * np.arange(M + 1)
        d = h * np.arange(-M, M + 1)
        e = h * np.arange(2 * M + 1)
        acc = {name: np.zeros((4, K, 2 * M + 1)) for name in self.SPECTRAL}
        acc.update({name: np.zeros((4, K, M + 1)) for name in self.NODAL})
        for lag in range(K):
            s, w, theta = _lag_rule(lag, dt)
            s0, w0, rho = _first_interval_rule(lag, dt)
            n = s.size
            both = self._evaluate(np.concatenate([s, s0])[:, None], y, d, e)
            rows = (w * (1.0 - theta), w * theta, w0 * rho, w0 * (1.0 - rho))
            for name, vals in both.items():
                for r, wr in enumerate(rows):
                    acc[name][r, lag] = wr @ (vals[:n] if r < 2 else vals[n:])
        # hat rows are pre-transformed along time for FFT convolution
        self.nt = next_fast_len(2 * K)
        self._tf = {}
        for name in self.SPECTRAL:
            rows = rfft(acc[name], self.nfft, axis=-1)
            self._tf[name] = (fft(rows[0], self.nt, axis=0), fft(rows[1], self.nt, axis=0), rows[2], rows[3])
        for name in self.NODAL:
            rows = acc[name]
            self._tf[name] = (rfft(rows[0], self.nt, axis=0), rfft(rows[1], self.nt, axis=0), rows[2], rows[3])
        self.ey = np.exp(-y)

    def _evaluate(self, s, y, d, e):
        h = self.h
        out = {
            "TG": _hat_g(s, d + s, h),
            "TGz": _hat_gz(s, d + s, h),
            "HG": _hat_g(s, s - e, h),
            "HGz": -_hat_gz(s, s - e, h),
        }
        out["bTG"], out["bTGz"] = _half_g(s, y + s, h)
        bhg, bhgz = _half_g(s, s - y, h)
        out["bHG"], out["bHGz"] = bhg, -bhgz
        sq = np.sqrt(s)
        ey = np.exp(-y)
        ea = ey * erfc((s - y) / (2.0 * sq))
        gys = _gauss(s, y + s)
        ratio = np.where(y > 0, y / s, 0.0)  # the y/s part is a delta at y = 0+
        out["P"] = 0.5 * (ea - erfc((s + y) / (2.0 * sq)))
        out["Py"] = -0.5 * ea + 2.0 * gys
        out["Pyy"] = 0.5 * ea - 2.0 * gys - ratio * gys
        out["G2"] = 2.0 * gys
        out["G2z"] = -gys - ratio * gys
        return out

    def tconv(self, name: str, C: np.ndarray) -> np.ndarray:
        """Time convolution of data ``C[k, ...]`` with the kernel family ``name``.

        Intervals [t_{k-1}, t_k] with k >= 2 use the hats (a discrete
        convolution in the lag, done by FFT); the first interval uses the sqrt
        basis at lag j - 1.
        """
        FA, FB, A1, B1 = self._tf[name]
        K, nt = self.K, self.nt
        spectral = name in self.SPECTRAL
        fwd, inv = (fft, ifft) if spectral else (rfft, irfft)
        shape = (K + 1,) + np.broadcast_shapes(A1.shape[1:], C.shape[1:])
        out = np.zeros(shape, dtype=complex if spectral else float)
        if K > 1:
            acc = FA * fwd(C[2:], nt, axis=0) + FB * fwd(C[1:K], nt, axis=0)
            out[2:] = inv(acc, nt, axis=0)[:K - 1]
        out[1:] += A1 * C[1] + B1 * C[0]
        return out

    def nodal_conv(self, name, scalars):
        return self.tconv(name, np.asarray(scalars, dtype=float)[:, None])

    def spatial(self, kind: str, c: np.ndarray):
        """Apply the Toeplitz (``T*``) or Hankel (``H*``) family to data ``c[k, m]`` in time and space."""
        M = self.M
        inner = c.copy()
        inner[:, 0] = 0.0
        inner[:, M] = 0.0
        src = inner[:, ::-1] if kind.startswith("H") else inner
        spec = self.tconv(kind, rfft(src, self.nfft, axis=-1))
        body = irfft(spec, self.nfft, axis=-1)[:, M:2 * M + 1]
        return body + self.nodal_conv("b" + kind, c[:, 0])


@lru_cache(maxsize=4)
def _kernels(M: int, h: float, K: int, dt: float) -> _LagKernels:
    return _LagKernels(M, h, K, dt)


# -- data handling --------------------------------------------------------------

def _data_field(u0, cfg: PicardConfig) -> PerturbationField:
    """Samples of u0 and two derivatives on the Picard grid."""
    h, M = cfg.grid_step, cfg.M
    if isinstance(u0, PerturbationField):
        u0.require(2)
        if not np.isclose(u0.grid_step, h) or u0.values.size < M + 1:
            raise InvalidInput("sampled data must use the Picard grid step and cover y_max")
        return PerturbationField(h, u0.values[:M + 1], u0.d1[:M + 1], u0.d2[:M + 1])
    y = h * np.arange(M + 1)
    return PerturbationField(h, u0(y, 0), u0(y, 1), u0(y, 2))


def data_norm(u0_plus: PerturbationField, u0_minus: PerturbationField) -> float:
    """Smallness measure ``max(|u0+|_{H2}, |u0-|_{H2})``."""
    return max(discrete_norms(u0_plus).h2, discrete_norms(u0_minus).h2)


def initial_continuity(u0_plus: PerturbationField, u0_minus: PerturbationField) -> float:
    return float(u0_plus.d1[0] + u0_minus.d1[0])


def _free_evolution(u0, data: PerturbationField, cfg: PicardConfig) -> np.ndarray:
    """``u1`` and its derivatives on the (t_j, y_n) grid."""
    y = data.y
    out = np.empty((cfg.K + 1, 3, y.size))
    out[0] = data.values, data.d1, data.d2
    for j in range(1, cfg.K + 1):
        for k in range(3):
            out[j, k] = odd_exact_solution(u0, j * cfg.dt, y, k, cfg.quad)
    return out


# -- the two maps -------------------------------------------------------------

def _source_response(ker: _LagKernels, gamma: np.ndarray) -> np.ndarray:
    """``u2`` and derivatives; the P_yy delta contributes ``-gamma(t)`` at y = 0."""
    out = np.stack([ker.nodal_conv(n, gamma) for n in ("P", "Py", "Pyy")], axis=1)
    out[1:, 2, 0] -= gamma[1:]
    return out


def _advection_response(ker: _LagKernels, gamma: np.ndarray, u: np.ndarray) -> np.ndarray:
    """``u3[u]`` and derivatives for one sign."""
    f = gamma[:, None] * u[:, 1]
    g = gamma[:, None] * u[:, 2]
    ey = ker.ey
    hg_f, hg_g = ker.spatial("HG", f), ker.spatial("HG", g)
    hgz_f, hgz_g = ker.spatial("HGz", f), ker.spatial("HGz", g)
    tg_f, tg_g = ker.spatial("TG", f), ker.spatial("TG", g)
    tgz_g = ker.spatial("TGz", g)
    f0 = f[:, 0]
    val = tg_f - ey * hg_f
    d1 = tg_g + ey * (hg_g + hg_f) + ker.nodal_conv("G2", f0)
    d2 = tgz_g + ey * (-hg_g + hgz_g - hg_f + hgz_f) + ker.nodal_conv("G2z", f0)
    d2[1:, 0] -= f0[1:]
    return np.stack([val, d1, d2], axis=1)


@dataclass(frozen=True, eq=False)
class _Problem:
    cfg: PicardConfig
    ker: _LagKernels
    u1_plus: np.ndarray
    u1_minus: np.ndarray
    d_plus: PerturbationField
    d_minus: PerturbationField
    F_src: tuple
    F_slope0: float


def _setup(u0_plus, u0_minus, cfg: PicardConfig, check_norm: bool = True) -> _Problem:
    dp, dm = _data_field(u0_plus, cfg), _data_field(u0_minus, cfg)
    for d in (dp, dm):
        if abs(d.values[0]) > CONTINUITY_TOL:
            raise InvalidInput("initial data must vanish at y = 0")
    cont = initial_continuity(dp, dm)
    if abs(cont) > CONTINUITY_TOL:
        raise InvalidInput(f"initial continuity u0+'(0) + u0-'(0) = {cont:.3e} violated")
    if check_norm:
        norm = data_norm(dp, dm)
        if norm >= cfg.norm_limit:
            raise InvalidInput(f"data norm {norm:.3f} exceeds the small-data limit {cfg.norm_limit}")
    src_p = u0_plus if not isinstance(u0_plus, PerturbationField) else dp
    src_m = u0_minus if not isinstance(u0_minus, PerturbationField) else dm
    ker = _kernels(cfg.M, cfg.grid_step, cfg.K, cfg.dt)
    F = dp.d1 + dm.d1 + 0.5 * (dp.values + dm.values)
    F_slope0 = float(dp.d2[0] + dm.d2[0] + 0.5 * (dp.d1[0] + dm.d1[0]))
    return _Problem(cfg, ker, _free_evolution(src_p, dp, cfg), _free_evolution(src_m, dm, cfg),
                    dp, dm, (F, cfg.grid_step), F_slope0)


def _field_map(prob: _Problem, gamma: np.ndarray, up: np.ndarray, um: np.ndarray):
    u2 = _source_response(prob.ker, gamma)
    new_p = prob.u1_plus + u2 + _advection_response(prob.ker, gamma, up)
    new_m = prob.u1_minus + u2 - _advection_response(prob.ker, gamma, um)
    bad = ~np.isfinite(new_p) | ~np.isfinite(new_m)
    if np.any(bad):
        j, _, n = np.argwhere(bad)[0]
        raise NonConvergence(f"non-finite field value at t={j * prob.cfg.dt:.4g}, y={n * prob.cfg.grid_step:.4g}")
    return new_p, new_m


def _gamma_map(prob: _Problem, gamma: np.ndarray, up: np.ndarray, um: np.ndarray) -> np.ndarray:
    cfg, ker = prob.cfg, prob.ker
    t = cfg.dt * np.arange(cfg.K + 1)
    g1 = np.empty(cfg.K + 1)
    g1[0] = -0.5 * prob.F_slope0
    for j in range(1, cfg.K + 1):
        g1[j] = -(halfline_conv(prob.F_src, t[j], t[j], 0, cfg.quad)[0]
                  + halfline_conv(prob.F_src, t[j], t[j], 1, cfg.quad)[0])
    D = up[:, 1, 0] - um[:, 1, 0]
    g2 = -0.5 * gamma * D - 0.25 * ker.nodal_conv("G2", gamma * D)[:, 0]
    g = up[:, 2] - um[:, 2] + 0.5 * (up[:, 1] - um[:, 1])
    c = gamma[:, None] * g
    g3 = -(ker.spatial("TG", c)[:, 0] + ker.spatial("TGz", c)[:, 0])
    return g1 + g2 + g3


def apply_field_map(state: PicardState, u0_plus, u0_minus, cfg: PicardConfig) -> PicardState:
    prob = _setup(u0_plus, u0_minus, cfg, check_norm=False)
    up, um = _field_map(prob, state.gamma.values, state.u_plus, state.u_minus)
    return PicardState(up, um, state.gamma, cfg.grid_step)


def apply_gamma_map(state: PicardState, u0_plus, u0_minus, cfg: PicardConfig) -> GammaSignal:
    prob = _setup(u0_plus, u0_minus, cfg, check_norm=False)
    return GammaSignal(cfg.dt, _gamma_map(prob, state.gamma.values, state.u_plus, state.u_minus))


def boundary_residuals(state: PicardState):
    """Continuity, interface and the two dynamical residuals at y = 0+ on the time grid."""
    up, um, gam = state.u_plus, state.u_minus, state.gamma.values
    cont = up[:, 1, 0] + um[:, 1, 0]
    inter = up[:, 2, 0] - um[:, 2, 0] + 2.0 * up[:, 1, 0]
    dyn_p = up[:, 1, 0] + up[:, 2, 0] + gam * (1.0 + up[:, 1, 0])
    dyn_m = um[:, 1, 0] + um[:, 2, 0] + gam * (1.0 - um[:, 1, 0])
    return cont, inter, dyn_p, dyn_m


def picard_solve(u0_plus, u0_minus, cfg: PicardConfig = PicardConfig()):
    """Iterate the field and gamma maps from ``(u1, 0)``; returns ``(state, report)``.

    Raises :class:`NonConvergence` (carrying the last iterate and the change
    history) if ``cfg.max_iter`` sweeps do not bring the sup-change below ``cfg.tol``.
    """
    prob = _setup(u0_plus, u0_minus, cfg)
    norm = data_norm(prob.d_plus, prob.d_minus)
    gamma = np.zeros(cfg.K + 1)
    up, um = prob.u1_plus.copy(), prob.u1_minus.copy()
    changes = []
    converged = False
    for it in range(1, cfg.max_iter + 1):
        if cfg.scheme == "alternating":
            new_p, new_m = _field_map(prob, gamma, up, um)
        else:
            new_p, new_m = up, um
            for _ in range(cfg.max_iter):
                nxt_p, nxt_m = _field_map(prob, gamma, new_p, new_m)
                inner = max(np.abs(nxt_p - new_p).max(), np.abs(nxt_m - new_m).max())
                new_p, new_m = nxt_p, nxt_m
                if inner < 0.1 * cfg.tol:
                    break
        new_g = _gamma_map(prob, gamma, new_p, new_m)
        change = float(max(np.abs(new_p - up).max(), np.abs(new_m - um).max(), np.abs(new_g - gamma).max()))
        changes.append(change)
        up, um, gamma = new_p, new_m, new_g
        if change < cfg.tol:
            converged = True
            break
    # the returned fields are consistent with the returned gamma
    up, um = _field_map(prob, gamma, up, um)
    state = PicardState(up, um, GammaSignal(cfg.dt, gamma), cfg.grid_step)
    cont, inter, dp, dm = boundary_residuals(state)
    report = PicardReport(len(changes), converged, changes, cont, inter, dp, dm, norm)
    if not converged:
        raise NonConvergence(f"no convergence in {cfg.max_iter} sweeps (last change {changes[-1]:.3e})",
                             history=changes, state=(state, report))
    return state, report


def weighted_sup_ratio(state: PicardState, alpha: float) -> float:
    """``max_t sup_y e^{alpha y}|u+-(t, y)|`` over its t = 0 value (worst sign)."""
    if not 0 < alpha <= 0.5:
        raise InvalidInput("alpha must lie in (0, 1/2]")
    w = np.exp(alpha * state.grid_step * np.arange(state.u_plus.shape[2]))
    ratios = []
    for u in (state.u_plus, state.u_minus):
        sup = np.abs(u[:, 0] * w).max(axis=1)
        if sup[0] > 0:
            ratios.append(float(sup.max() / sup[0]))
    return max(ratios, default=1.0)
