"""Crank-Nicolson finite differences for the coupled v+- system with interface tracking.

Unknowns live at interior nodes ``y_n = n h`` (n = 1..N) of [0, L]; both
components vanish at ``y_0`` and ``y_{N+1}``.  Node ``n`` carries the pair
``(v+_n, v-_n)`` so the system is block tridiagonal with 2x2 blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ._backend import kernels
from .errors import InvalidInput, SolverError
from .initial_data import Preset, get_preset

GAMMA_MODES = ("implicit", "frozen", "predictor-corrector")
DENOM_GUARD = 1e-14


@dataclass(frozen=True, eq=False)
class FdConfig:
    """Grid, step and initial data; ``h = L / (N + 1)``.

    ``ic`` is a preset name or a pair ``(v_plus0, v_minus0)`` of length-N arrays.
    ``stride`` sets how often snapshots are kept.
    """

    L: float = 30.0
    N: int = 2999
    tau: float = 0.002
    T: float = 4.0
    ic: object = "IC1"
    gamma_mode: str = "implicit"
    stride: int = 50

    def __post_init__(self):
        if not self.L > 0:
            raise InvalidInput("L must be positive")
        if int(self.N) != self.N or self.N < 8:
            raise InvalidInput("N must be an integer >= 8")
        if not self.tau > 0:
            raise InvalidInput("tau must be positive")
        if not self.T >= self.tau:
            raise InvalidInput("T must be at least tau")
        if not self.h < 2.0:
            raise InvalidInput("h = L/(N+1) must be below 2")
        if self.gamma_mode not in GAMMA_MODES:
            raise InvalidInput(f"gamma_mode must be one of {GAMMA_MODES}")
        if self.stride < 1:
            raise InvalidInput("stride must be >= 1")
        steps = self.T / self.tau
        if abs(steps - round(steps)) > 1e-8 * max(steps, 1.0):
            raise InvalidInput("T must be an integer multiple of tau")

    @classmethod
    def from_step(cls, L: float = 30.0, h: float = 0.01, **kw) -> "FdConfig":
        return cls(L=L, N=int(round(L / h)) - 1, **kw)

    @property
    def h(self) -> float:
        return self.L / (self.N + 1)

    @property
    def n_steps(self) -> int:
        return int(round(self.T / self.tau))

    @property
    def y(self) -> np.ndarray:
        return self.h * np.arange(1, self.N + 1)


@dataclass(frozen=True, eq=False)
class SolverState:
    v_plus: np.ndarray
    v_minus: np.ndarray
    gamma_k: float
    xi: float
    k: int

    @property
    def u_plus(self) -> np.ndarray:
        return 0.5 * (self.v_plus + self.v_minus)

    @property
    def u_minus(self) -> np.ndarray:
        return 0.5 * (self.v_minus - self.v_plus)


@dataclass(frozen=True, eq=False)
class BlockTridiag:
    """2x2-block tridiagonal operator; ``sub[n]`` is block (n+1, n)."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def matvec(self, x: np.ndarray) -> np.ndarray:
        out = np.einsum("nij,nj->ni", self.diag, x)
        out[1:] += np.einsum("nij,nj->ni", self.sub, x[:-1])
        out[:-1] += np.einsum("nij,nj->ni", self.sup, x[1:])
        return out

    def to_dense(self) -> np.ndarray:
        """Dense 2N x 2N matrix in the ``[v+ ; v-]`` (not interleaved) ordering."""
        N = self.diag.shape[0]
        M = np.zeros((2 * N, 2 * N))
        for a in range(2):
            for b in range(2):
                blk = M[a * N:(a + 1) * N, b * N:(b + 1) * N]
                blk[np.arange(N), np.arange(N)] = self.diag[:, a, b]
                blk[np.arange(1, N), np.arange(N - 1)] = self.sub[:, a, b]
                blk[np.arange(N - 1), np.arange(1, N)] = self.sup[:, a, b]
        return M


def gamma_discrete(v_plus_1: float, v_minus_1: float, h: float) -> float:
    """Interface velocity from the first interior node values."""
    denom = h * v_plus_1 + h * h * (2.0 - h)
    if abs(denom) <= DENOM_GUARD:
        raise SolverError(
            f"gamma denominator {denom:.3e} vanished (1 + u_y(t,0) -> 0, positivity lost)"
        )
    return -(2.0 - h) * v_minus_1 / denom


def _stencil(h: float, tau: float):
    """Off-diagonal weights of A(tau): (a_{j,j-1}, a_{j,j}, a_{j,j+1})."""
    lo = 0.5 * tau * (-0.5 / h + 1.0 / (h * h))
    up = 0.5 * tau * (0.5 / h + 1.0 / (h * h))
    return lo, 1.0 - tau / (h * h), up


def assemble_system(gamma_k: float, h: float, tau: float, N: int) -> tuple[BlockTridiag, BlockTridiag]:
    """``(L(-tau), L(tau))`` with ``L = [[A, B], [B, A]]`` in block storage."""

    def build(tt):
        lo, dg, up = _stencil(h, tt)
        b = tt * gamma_k / (4.0 * h)
        diag = np.zeros((N, 2, 2))
        diag[:, 0, 0] = diag[:, 1, 1] = dg
        sub = np.empty((N - 1, 2, 2))
        sub[:, 0, 0] = sub[:, 1, 1] = lo
        sub[:, 0, 1] = sub[:, 1, 0] = -b
        sup = np.empty((N - 1, 2, 2))
        sup[:, 0, 0] = sup[:, 1, 1] = up
        sup[:, 0, 1] = sup[:, 1, 0] = b
        return BlockTridiag(sub, diag, sup)

    return build(-tau), build(tau)


def _apply_right(vp, vm, h, tau, gamma):
    """``L(tau) v`` using shifted slices (zero Dirichlet values outside)."""
    lo, dg, up = _stencil(h, tau)
    b = tau * gamma / (4.0 * h)

    def shift(v):
        left = np.concatenate(([0.0], v[:-1]))
        right = np.concatenate((v[1:], [0.0]))
        return left, right

    pl, pr = shift(vp)
    ml, mr = shift(vm)
    rp = dg * vp + lo * pl + up * pr + b * (mr - ml)
    rm = dg * vm + lo * ml + up * mr + b * (pr - pl)
    return rp, rm


def _solve(left: BlockTridiag, rhs: np.ndarray) -> np.ndarray:
    return kernels.block_tridiag_solve(left.sub, left.diag, left.sup, rhs)


def cn_step(state: SolverState, cfg: FdConfig) -> SolverState:
    """Advance one time level.

    ``gamma_mode="implicit"`` keeps the B coupling at gamma_k but weights the
    ``2 gamma e^{-y}`` source as ``gamma_k + gamma_{k+1}``, with gamma_{k+1}
    linear in the new ``v-_1`` (level-k denominator); the rank-one term is
    handled by Sherman-Morrison.  ``"frozen"`` uses gamma_k everywhere (stable
    only for small tau/h^2); ``"predictor-corrector"`` re-solves once with the
    average of gamma_k and the predicted gamma_{k+1}.
    """
    h, tau, N = cfg.h, cfg.tau, cfg.N
    y = cfg.y
    ey = np.exp(-y)
    vp, vm = state.v_plus, state.v_minus
    g = gamma_discrete(vp[0], vm[0], h)

    def frozen(gam):
        left, _ = assemble_system(gam, h, tau, N)
        rp, rm = _apply_right(vp, vm, h, tau, gam)
        rhs = np.stack([rp, rm + 2.0 * tau * gam * ey], axis=1)
        return _solve(left, rhs)

    if cfg.gamma_mode == "frozen":
        x = frozen(g)
    elif cfg.gamma_mode == "predictor-corrector":
        pred = frozen(g)
        g_pred = gamma_discrete(pred[0, 0], pred[0, 1], h)
        x = frozen(0.5 * (g + g_pred))
    else:
        left, _ = assemble_system(g, h, tau, N)
        rp, rm = _apply_right(vp, vm, h, tau, g)
        denom = h * vp[0] + h * h * (2.0 - h)
        slope = -(2.0 - h) / denom  # gamma_{k+1} ~ slope * v-_1(k+1)
        rhs = np.zeros((N, 2, 2))
        rhs[:, 0, 0] = rp
        rhs[:, 1, 0] = rm + tau * g * ey
        rhs[:, 1, 1] = -tau * slope * ey
        sol = _solve(left, rhs)
        x, z = sol[:, :, 0], sol[:, :, 1]
        x = x - z * (x[0, 1] / (1.0 + z[0, 1]))
    if not np.all(np.isfinite(x)):
        raise SolverError(f"non-finite values after step {state.k + 1}")
    vp_new, vm_new = np.ascontiguousarray(x[:, 0]), np.ascontiguousarray(x[:, 1])
    g_new = gamma_discrete(vp_new[0], vm_new[0], h)
    xi = state.xi + 0.5 * tau * (g + g_new)
    return SolverState(vp_new, vm_new, g_new, xi, state.k + 1)


def split_initial(u0: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """``v+-(y) = u0(y) -+ u0(-y)`` from samples on the symmetric grid ``x_j = j h``.

    ``u0`` has odd length ``2M + 1`` with ``u0[M]`` at x = 0; returned vectors
    hold y = h..M h.
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.ndim != 1 or u0.size % 2 != 1 or u0.size < 3:
        raise InvalidInput("u0 must be sampled on a symmetric grid of odd length")
    M = u0.size // 2
    if abs(u0[M]) > 1e-10:
        raise InvalidInput(f"u0(0) = {u0[M]:.3e} must vanish (interface at the origin)")
    right = u0[M + 1:]
    left = u0[:M][::-1]
    return right - left, right + left


def merge_halves(v_plus: np.ndarray, v_minus: np.ndarray) -> np.ndarray:
    """Inverse of :func:`split_initial` (including the zero at x = 0)."""
    up = 0.5 * (v_plus + v_minus)
    um = 0.5 * (v_minus - v_plus)
    return np.concatenate((um[::-1], [0.0], up))


def initial_state(cfg: FdConfig) -> SolverState:
    if isinstance(cfg.ic, (str, Preset)):
        preset = get_preset(cfg.ic) if isinstance(cfg.ic, str) else cfg.ic
        vp, vm = preset.v_plus(cfg.y), preset.v_minus(cfg.y)
    else:
        vp, vm = (np.asarray(a, dtype=float) for a in cfg.ic)
        if vp.shape != (cfg.N,) or vm.shape != (cfg.N,):
            raise InvalidInput("explicit initial data must have N interior samples each")
    g0 = gamma_discrete(vp[0], vm[0], cfg.h)
    return SolverState(np.array(vp), np.array(vm), g0, 0.0, 0)


def h1_energy(state: SolverState, h: float) -> float:
    """``|u+|^2_{H1} + |u-|^2_{H1}``: node sums for L2, forward differences for the slope."""
    total = 0.0
    for u in (state.u_plus, state.u_minus):
        padded = np.concatenate(([0.0], u, [0.0]))
        total += h * np.dot(u, u) + np.sum(np.diff(padded) ** 2) / h
    return total


def sup_norm(state: SolverState) -> float:
    return float(max(np.abs(state.u_plus).max(), np.abs(state.u_minus).max()))


@dataclass(eq=False)
class Trajectory:
    config: FdConfig
    snapshots: list = field(default_factory=list)
    times: np.ndarray = None
    gamma_series: np.ndarray = None
    xi_series: np.ndarray = None
    norm_series: dict = field(default_factory=dict)
    failure: str | None = None

    def profile(self, state: SolverState):
        """``(x, u, w)`` on [-L, L] in the co-moving frame.

        ``w = W_0(x) + u(x)`` is the full solution at lab position ``x + xi``.
        """
        h = self.config.h
        u = np.concatenate(([0.0], merge_halves(state.v_plus, state.v_minus), [0.0]))
        M = self.config.N + 1
        x = h * np.arange(-M, M + 1)
        w0 = np.sign(x) * (1.0 - np.exp(-np.abs(x)))
        return x, u, w0 + u


def simulate(cfg: FdConfig, state: SolverState | None = None) -> Trajectory:
    """Run to ``cfg.T``; on failure raise :class:`SolverError` carrying the partial run."""
    state = initial_state(cfg) if state is None else state
    K = cfg.n_steps
    gam = np.full(K + 1, np.nan)
    xi = np.full(K + 1, np.nan)
    energy = np.full(K + 1, np.nan)
    sup = np.full(K + 1, np.nan)
    traj = Trajectory(cfg, times=cfg.tau * np.arange(K + 1), gamma_series=gam, xi_series=xi,
                      norm_series={"h1_energy": energy, "sup_norm": sup})

    def record(s):
        gam[s.k], xi[s.k] = s.gamma_k, s.xi
        energy[s.k], sup[s.k] = h1_energy(s, cfg.h), sup_norm(s)
        if s.k % cfg.stride == 0 or s.k == K:
            traj.snapshots.append(s)

    record(state)
    for _ in range(K):
        try:
            state = cn_step(state, cfg)
        except (SolverError, ZeroDivisionError, np.linalg.LinAlgError) as exc:
            traj.failure = f"step {state.k + 1}: {exc}"
            _truncate(traj, state.k)
            if traj.snapshots[-1].k != state.k:
                traj.snapshots.append(state)
            raise SolverError(traj.failure, traj) from exc
        record(state)
    return traj


def _truncate(traj: Trajectory, k: int) -> None:
    traj.times = traj.times[:k + 1]
    traj.gamma_series = traj.gamma_series[:k + 1]
    traj.xi_series = traj.xi_series[:k + 1]
    traj.norm_series = {key: v[:k + 1] for key, v in traj.norm_series.items()}


def with_resolution(cfg: FdConfig, h: float, tau: float) -> FdConfig:
    return replace(cfg, N=int(round(cfg.L / h)) - 1, tau=tau)


# -- grid convergence ---------------------------------------------------------

CONVERGENCE_CASES = ("odd", "general")


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    h: float
    tau: float
    error: float
    order: float


def _level_config(cfg: FdConfig, level: int, tau_scaling: str) -> FdConfig:
    h = cfg.h / 2**level
    tau = cfg.tau / (2**level if tau_scaling == "linear" else 4**level)
    return with_resolution(cfg, h, tau)


def _odd_level_error(cfg: FdConfig, times: tuple, quad) -> float:
    from .heat_kernel import odd_exact_solution

    steps = [int(round(t / cfg.tau)) for t in times]
    if any(abs(k * cfg.tau - t) > 1e-9 for k, t in zip(steps, times)):
        raise InvalidInput("comparison times must be multiples of tau")
    stride = int(np.gcd.reduce(steps))
    traj = simulate(replace(cfg, T=max(times), stride=stride))
    preset = cfg.ic if isinstance(cfg.ic, Preset) else get_preset(cfg.ic)
    snaps = {s.k: s for s in traj.snapshots}
    err = 0.0
    for k, t in zip(steps, times):
        exact = odd_exact_solution(preset.u_plus, t, cfg.y, 0, quad)
        err = max(err, float(np.abs(snaps[k].u_plus - exact).max()))
    return err


def _xi_final(cfg: FdConfig) -> float:
    return float(simulate(replace(cfg, stride=cfg.n_steps)).xi_series[-1])


def convergence_study(cfg_base: FdConfig, levels: int = 4, case: str = "odd",
                      tau_scaling: str = "linear", times: tuple = (0.5, 1.0, 2.0),
                      workers: int = 1) -> list[ConvergenceRow]:
    """Halve h per level (tau by 2 or 4) and report errors with observed orders.

    ``odd``: sup-norm error of u+ against the exact half-line solution at
    ``times`` (the preset must have ``v-_0 = 0``).  ``general``: successive
    differences of xi(T) (self-convergence, no reference needed); the first
    level has no error.  ``order[l] = log2(error[l-1] / error[l])``.
    """
    from concurrent.futures import ProcessPoolExecutor
    from .quadrature import QuadratureSpec

    if levels < 3:
        raise InvalidInput("levels must be >= 3")
    if case not in CONVERGENCE_CASES:
        raise InvalidInput(f"case must be one of {CONVERGENCE_CASES}")
    if tau_scaling not in ("linear", "quadratic"):
        raise InvalidInput("tau_scaling must be 'linear' or 'quadratic'")
    cfgs = [_level_config(cfg_base, lvl, tau_scaling) for lvl in range(levels)]
    if case == "odd":
        preset = cfg_base.ic if isinstance(cfg_base.ic, Preset) else get_preset(cfg_base.ic)
        if np.any(preset.v_minus(cfg_base.y)):
            raise InvalidInput("odd convergence study needs initial data with v- = 0")
        quad = QuadratureSpec(n_space=16)
        jobs = [(_odd_level_error, (c, tuple(times), quad)) for c in cfgs]
    else:
        jobs = [(_xi_final, (c,)) for c in cfgs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_call, jobs))
    else:
        values = [_call(job) for job in jobs]
    if case == "general":
        values = [np.nan] + [abs(b - a) for a, b in zip(values[:-1], values[1:])]
    rows = []
    for lvl, (c, err) in enumerate(zip(cfgs, values)):
        prev = values[lvl - 1] if lvl > 0 else np.nan
        order = np.log2(prev / err) if lvl > 0 and np.isfinite(prev) and err > 0 else np.nan
        rows.append(ConvergenceRow(lvl, c.h, c.tau, float(err), float(order)))
    return rows


def _call(job):
    fn, args = job
    return fn(*args)


def observed_order(rows: list[ConvergenceRow]) -> float:
    """Order from the three finest levels (the last row)."""
    return rows[-1].order


def richardson_limit(values: list[float]) -> float:
    """Limit of a sequence on halved grids from its three last entries."""
    a, b, c = values[-3:]
    p = np.log2(abs(b - a) / abs(c - b))
    return float(c + (c - b) / (2.0**p - 1.0))
