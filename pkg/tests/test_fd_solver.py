from dataclasses import replace

import numpy as np
import pytest

from modburgers.errors import InvalidInput, SolverError
from modburgers.fd_solver import (
    FdConfig,
    assemble_system,
    cn_step,
    convergence_study,
    gamma_discrete,
    initial_state,
    merge_halves,
    observed_order,
    richardson_limit,
    simulate,
    split_initial,
)


def dense_ops(gamma, h, tau, N):
    """Straightforward dense L(-tau), L(tau) in [v+ ; v-] ordering."""
    def build(tt):
        A = np.zeros((N, N))
        B = np.zeros((N, N))
        for j in range(N):
            A[j, j] = 1 - tt / h**2
            if j > 0:
                A[j, j - 1] = tt / 2 * (-1 / (2 * h) + 1 / h**2)
                B[j, j - 1] = -tt / (4 * h) * gamma
            if j < N - 1:
                A[j, j + 1] = tt / 2 * (1 / (2 * h) + 1 / h**2)
                B[j, j + 1] = tt / (4 * h) * gamma
        return np.block([[A, B], [B, A]])
    return build(-tau), build(tau)


def test_gamma_discrete_examples():
    assert gamma_discrete(0.3, 0.0, 0.1) == 0.0
    assert gamma_discrete(0.0, 0.01, 0.1) == pytest.approx(-1.0, abs=1e-14)
    assert gamma_discrete(0.019, 0.01, 0.1) == pytest.approx(-0.9090909090909, abs=1e-12)
    with pytest.raises(SolverError):
        gamma_discrete(-0.19, 0.01, 0.1)


def test_config_validation():
    for kw in (dict(L=-1.0), dict(N=4), dict(tau=0.0), dict(T=0.001, tau=0.002),
               dict(L=30.0, N=9), dict(gamma_mode="euler"), dict(T=1.0, tau=0.3)):
        with pytest.raises(InvalidInput):
            FdConfig(**kw)


def test_zero_gamma_decouples():
    left, right = assemble_system(0.0, 0.05, 0.01, 20)
    for op in (left, right):
        assert np.all(op.sub[:, 0, 1] == 0) and np.all(op.sup[:, 1, 0] == 0)
        d = op.to_dense()
        assert np.all(d[:20, 20:] == 0) and np.all(d[20:, :20] == 0)


def test_interior_rows_sum_to_one():
    _, right = assemble_system(0.3, 0.05, 0.01, 20)
    A = right.to_dense()[:20, :20]
    assert np.allclose(A[1:-1].sum(axis=1), 1.0, atol=1e-14)


def test_small_system_matches_dense_formulas():
    left, right = assemble_system(0.2, 0.5, 0.1, 3)
    dl, dr = dense_ops(0.2, 0.5, 0.1, 3)
    assert np.allclose(left.to_dense(), dl, atol=1e-15)
    assert np.allclose(right.to_dense(), dr, atol=1e-15)
    x = np.arange(6.0).reshape(2, 3).T
    assert np.allclose(right.matvec(x).T.ravel(), dr @ x.T.ravel(), atol=1e-14)


@pytest.mark.parametrize("mode", ["implicit", "frozen", "predictor-corrector"])
def test_one_step_matches_dense_reference(mode):
    cfg = FdConfig.from_step(L=6.0, h=0.01, tau=0.001, T=0.001, gamma_mode=mode)
    s0 = initial_state(cfg)
    h, tau, N = cfg.h, cfg.tau, cfg.N
    ey = np.exp(-cfg.y)
    v = np.concatenate([s0.v_plus, s0.v_minus])

    def frozen(g):
        dl, dr = dense_ops(g, h, tau, N)
        rhs = dr @ v
        rhs[N:] += 2 * tau * g * ey
        return np.linalg.solve(dl, rhs)

    g = s0.gamma_k
    if mode == "implicit":
        slope = -(2 - h) / (h * s0.v_plus[0] + h * h * (2 - h))
        dl, dr = dense_ops(g, h, tau, N)
        dl[N:, N] -= tau * slope * ey
        rhs = dr @ v
        rhs[N:] += tau * g * ey
        ref = np.linalg.solve(dl, rhs)
    elif mode == "frozen":
        ref = frozen(g)
    else:
        pred = frozen(g)
        ref = frozen(0.5 * (g + gamma_discrete(pred[0], pred[N], h)))
    s1 = cn_step(s0, cfg)
    assert np.max(np.abs(np.concatenate([s1.v_plus, s1.v_minus]) - ref)) <= 1e-12
    assert s1.k == 1
    assert s1.xi == pytest.approx(0.5 * tau * (g + s1.gamma_k), abs=1e-15)


def test_split_round_trip(rng):
    M = 50
    u0 = rng.standard_normal(2 * M + 1)
    u0[M] = 0.0
    vp, vm = split_initial(u0, 0.1)
    assert np.allclose(merge_halves(vp, vm), u0, rtol=0, atol=1e-15)
    with pytest.raises(InvalidInput):
        split_initial(np.ones(5), 0.1)
    with pytest.raises(InvalidInput):
        split_initial(np.zeros(4), 0.1)


def test_split_odd_data():
    x = 0.1 * np.arange(-30, 31)
    _, vm = split_initial(x * np.exp(-x * x), 0.1)
    assert np.all(vm == 0)


def test_split_ic1_values():
    h = 0.01
    y = h * np.arange(1, 601)
    vp_ref = 0.1 * (y - 0.5 * y * y) * np.exp(-y * y)
    vm_ref = 0.5 * y * y * np.exp(-y * y)
    u0 = merge_halves(vp_ref, vm_ref)
    vp, vm = split_initial(u0, h)
    assert np.allclose(vp, vp_ref, atol=1e-15) and np.allclose(vm, vm_ref, atol=1e-15)
    cfg = FdConfig.from_step(L=6.01, h=h, T=0.002)
    s = initial_state(cfg)
    assert np.allclose(s.v_plus, vp_ref, atol=1e-15) and np.allclose(s.v_minus, vm_ref, atol=1e-15)


def test_zero_state_stays_zero():
    cfg = FdConfig(L=5.0, N=99, tau=0.01, T=0.1, ic=(np.zeros(99), np.zeros(99)))
    traj = simulate(cfg)
    s = traj.snapshots[-1]
    assert not np.any(s.v_plus) and not np.any(s.v_minus)
    assert np.all(traj.gamma_series == 0) and np.all(traj.xi_series == 0)


def test_explicit_ic_shape_checked():
    with pytest.raises(InvalidInput):
        initial_state(FdConfig(L=5.0, N=99, tau=0.01, T=0.1, ic=(np.zeros(98), np.zeros(98))))


def test_odd_data_stays_decoupled():
    cfg = FdConfig.from_step(L=20.0, h=0.02, tau=0.01, T=4.0, ic="ODD", stride=10)
    traj = simulate(cfg)
    assert max(np.abs(s.v_minus).max() for s in traj.snapshots) <= 1e-13
    assert np.abs(traj.gamma_series).max() <= 1e-13
    assert np.all(traj.xi_series == 0)
    sup = traj.norm_series["sup_norm"][traj.times >= 1.0]
    assert np.all(np.diff(sup) <= 0)


def test_ic1_default_resolution_relaxes():
    traj = simulate(FdConfig(stride=500))
    assert -0.13 <= traj.xi_series[-1] <= -0.09
    assert np.all(np.diff(traj.times[: len(traj.xi_series)]) > 0)
    ks = [s.k for s in traj.snapshots]
    assert ks == sorted(set(ks)) and ks[-1] == traj.config.n_steps


def test_gamma_summability_proxy():
    cfg = FdConfig.from_step(L=30.0, h=0.02, tau=0.004, T=8.0, stride=2000)
    traj = simulate(cfg)
    partial = np.cumsum(np.abs(traj.gamma_series)) * cfg.tau
    n = len(partial)
    tail = partial[-1] - partial[n // 2]
    assert tail < 0.1 * partial[n // 2]


def test_far_boundary_harmless():
    base = FdConfig.from_step(L=30.0, h=0.02, tau=0.004, T=4.0, stride=1000)
    wide = FdConfig.from_step(L=60.0, h=0.02, tau=0.004, T=4.0, stride=1000)
    assert abs(simulate(base).xi_series[-1] - simulate(wide).xi_series[-1]) < 1e-4


@pytest.mark.parametrize("mode", ["frozen", "predictor-corrector"])
def test_alternative_gamma_modes_agree(mode):
    # frozen coupling needs tau well below h^2
    kw = dict(L=10.0, h=0.1, tau=0.002, T=2.0, stride=1000)
    a = simulate(FdConfig.from_step(**kw)).xi_series[-1]
    b = simulate(FdConfig.from_step(gamma_mode=mode, **kw)).xi_series[-1]
    assert abs(a - b) < 2e-3


def test_failure_carries_partial_trajectory(monkeypatch):
    import modburgers.fd_solver as fd

    real_step = fd.cn_step

    def failing(state, cfg):
        if state.k == 7:
            raise SolverError("gamma denominator vanished")
        return real_step(state, cfg)

    monkeypatch.setattr(fd, "cn_step", failing)
    cfg = FdConfig.from_step(L=5.0, h=0.05, tau=0.01, T=1.0, stride=3)
    with pytest.raises(SolverError) as err:
        simulate(cfg)
    traj = err.value.trajectory
    assert traj.failure.startswith("step 8")
    assert len(traj.gamma_series) == 8 and np.all(np.isfinite(traj.xi_series))
    assert traj.snapshots[-1].k == 7


def test_frozen_mode_unstable_at_large_ratio():
    # tau/h^2 = 20: the frozen scheme drifts far from the implicit one
    kw = dict(L=30.0, h=0.01, tau=0.002, T=4.0, stride=1000)
    assert abs(simulate(FdConfig.from_step(gamma_mode="frozen", **kw)).xi_series[-1]) > 1.0


def test_convergence_study_odd():
    cfg = FdConfig.from_step(L=20.0, h=0.04, tau=0.01, T=2.0, ic="ODD")
    rows = convergence_study(cfg, levels=3)
    errs = [r.error for r in rows]
    assert errs[0] > errs[1] > errs[2]
    assert observed_order(rows) >= 1.9
    with pytest.raises(InvalidInput):
        convergence_study(cfg, levels=2)
    with pytest.raises(InvalidInput):
        convergence_study(replace(cfg, ic="IC1"), levels=3)


def test_richardson_limit():
    vals = [1 + 0.5**p for p in (1, 2, 3)]
    assert richardson_limit(vals) == pytest.approx(1.0, abs=1e-14)
