import numpy as np
import pytest

from modburgers.diagnostics import (
    decay_bound_check,
    decay_bound_rhs,
    discrete_norms,
    energy_monotonicity_report,
    energy_violations,
    exact_sup_sampler,
    fit_xi_infinity,
    interface_residuals,
    positivity_check,
)
from modburgers.errors import SolverError
from modburgers.fd_solver import FdConfig, simulate
from modburgers.fields import PerturbationField
from modburgers.initial_data import PolyExp, get_preset

YEXP = PolyExp((0.0, 1.0), "exp")


def test_zero_field_norms():
    rep = discrete_norms(PerturbationField(0.01, np.zeros(100), np.zeros(100), np.zeros(100)), alpha=0.25)
    assert rep.l2 == rep.h1 == rep.h2 == rep.linf == rep.w1inf == rep.w2inf == rep.alpha_weighted_w2inf == 0.0


def test_exponential_l2():
    field = PerturbationField.from_function(PolyExp((1.0,), "exp"), 0.001, 40.0)
    rep = discrete_norms(field)
    assert rep.l2 == pytest.approx(np.sqrt(0.5), abs=1e-4)
    assert rep.linf == pytest.approx(1.0) and np.argmax(np.abs(field.values)) == 0


def test_norms_without_derivatives():
    rep = discrete_norms(PerturbationField(0.1, np.arange(5.0)))
    assert rep.h1 is None and rep.w2inf is None and rep.alpha_weighted_w2inf is None


def test_norm_orderings_and_weight():
    field = PerturbationField.from_function(YEXP, 0.01, 30.0)
    rep = discrete_norms(field, alpha=0.25)
    assert rep.l2 <= rep.h1 <= rep.h2
    assert rep.linf <= rep.w1inf <= rep.w2inf
    assert rep.linf <= rep.alpha_weighted_w2inf  # e^{alpha y} >= 1
    assert rep.alpha == 0.25


def test_energy_detector_finds_injected_bump():
    e = np.linspace(1.0, 0.5, 20)
    e[12] += 0.1
    assert [k for k, _ in energy_violations(e, 1e-10)] == [12]
    assert energy_violations(np.linspace(1.0, 0.5, 20), 1e-10) == []


def test_odd_energy_monotone():
    traj = simulate(FdConfig(ic="ODD", stride=500))
    assert energy_monotonicity_report(traj) == []


def test_general_energy_monotone():
    traj = simulate(FdConfig(stride=500))
    assert energy_monotonicity_report(traj) == []


def test_decay_bounds_exact_solution():
    y = np.linspace(0, 60, 12001)
    l2 = [np.sqrt(np.trapezoid(YEXP(y, k) ** 2, y)) for k in range(3)]
    checks = decay_bound_check(exact_sup_sampler(YEXP, np.linspace(0, 60, 3001)), l2, [1, 4, 16, 64])
    assert len(checks) == 12 and all(c.passed for c in checks)
    zero = decay_bound_check(lambda t: (0.0, 0.0, 0.0), (0.0, 0.0, 0.0), [1.0])
    assert all(c.passed for c in zero)
    with pytest.raises(ValueError):
        decay_bound_check(lambda t: (0, 0, 0), l2, [0.5])


def test_decay_rhs_power_law():
    a = np.array(decay_bound_rhs(16.0, (0.3, 0.2, 0.1)))
    b = np.array(decay_bound_rhs(1.0, (0.3, 0.2, 0.1)))
    assert np.allclose(a / b, 0.5, rtol=0, atol=1e-12)


def test_interface_residuals_odd_run():
    traj = simulate(FdConfig.from_step(L=20.0, h=0.02, tau=0.01, T=2.0, ic="ODD", stride=20))
    r = interface_residuals(traj)
    # u- = -u+, so r1 = 2 gamma+ and r2 = 2 u+_y(0) + ... vanish only up to O(h)
    assert np.abs(r.r1).max() <= 1e-3
    assert np.abs(r.r2).max() <= 1e-3
    assert np.allclose(r.gamma_plus, -r.gamma_minus, atol=1e-14)


def test_interface_residuals_ic1_and_refinement():
    res = []
    for h in (0.04, 0.02, 0.01):
        traj = simulate(FdConfig.from_step(L=30.0, h=h, tau=0.2 * h, T=4.0, stride=int(round(0.1 / (0.2 * h)))))
        r = interface_residuals(traj)
        res.append(max(np.abs(r.r1).max(), np.abs(r.r2).max()))
    assert res[-1] <= 0.05
    orders = np.log2(np.array(res[:-1]) / np.array(res[1:]))
    assert np.all(orders >= 0.9)


def test_fit_xi_zero_gamma():
    assert fit_xi_infinity(np.full(50, -0.2), np.zeros(50)) == (-0.2, -0.2)


def test_fit_xi_exponential_tail():
    t = np.linspace(0, 6, 601)
    gam = np.exp(-t)
    xi = 0.3 + (1 - np.exp(-t))
    xi_T, xi_inf = fit_xi_infinity(xi, gam, t)
    assert xi_T == pytest.approx(xi[-1])
    assert xi_inf == pytest.approx(1.3, abs=1e-3)


def test_fit_xi_falls_back_on_sign_change():
    t = np.linspace(0, 6, 601)
    xi_T, xi_inf = fit_xi_infinity(np.sin(t), np.cos(3 * t), t)
    assert xi_T == xi_inf


def test_fit_xi_ic1_in_range():
    traj = simulate(FdConfig(stride=2000))
    xi_T, xi_inf = fit_xi_infinity(traj.xi_series, traj.gamma_series, traj.times)
    assert -0.13 <= xi_T <= -0.09 and -0.13 <= xi_inf <= -0.09


def test_positivity_pure_shock():
    N = 599
    cfg = FdConfig(L=6.0, N=N, tau=0.01, T=0.1, ic=(np.zeros(N), np.zeros(N)))
    assert positivity_check(simulate(cfg)) == []


@pytest.mark.parametrize("ic, T", [("IC1", 4.0), ("IC2", 12.0)])
def test_positivity_presets(ic, T):
    traj = simulate(FdConfig(ic=ic, T=T, stride=100))
    assert positivity_check(traj) == []


def test_positivity_detector_robust_to_large_data():
    preset = get_preset("IC1").scaled(50.0)
    cfg = FdConfig.from_step(L=30.0, h=0.02, tau=0.004, T=1.0, ic=preset, stride=25)
    try:
        traj = simulate(cfg)
    except SolverError as exc:
        traj = exc.trajectory
    bad = positivity_check(traj)
    # x50 data already has w of the wrong sign left of the interface at t = 0
    assert len(bad) > 0
    assert all(len(v) == 3 and np.isfinite(v[2]) for v in bad)
