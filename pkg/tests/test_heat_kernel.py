import numpy as np
import pytest
from scipy import integrate

from modburgers.errors import InvalidInput
from modburgers.fields import GammaSignal, PerturbationField
from modburgers.heat_kernel import (
    dirichlet_halfline,
    dirichlet_halfline_inhomog,
    gauss_kernel,
    kernel_norm_table,
    nu_boundary_residual,
    nu_solution,
    odd_exact_solution,
)
from modburgers.initial_data import PolyExp
from modburgers.quadrature import QuadratureSpec

QUAD = QuadratureSpec()
YEXP = PolyExp((0.0, 1.0), "exp")  # y e^{-y}
YGAUSS = PolyExp((0.0, 1.0), "gauss")  # y e^{-y^2}


def test_gauss_kernel_examples():
    assert gauss_kernel(1 / (4 * np.pi), 0.0) == pytest.approx(1.0)
    assert gauss_kernel(1.0, 0.0, 1) == 0.0
    total = integrate.quad(lambda x: gauss_kernel(1.0, x), -np.inf, np.inf)[0]
    assert total == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidInput):
        gauss_kernel(0.0, 1.0)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_kernel_norm_table_against_quadrature(t):
    g = lambda x: gauss_kernel(t, x)
    gx = lambda x: gauss_kernel(t, x, 1)
    ref = (
        integrate.quad(lambda x: abs(g(x)), -np.inf, np.inf, epsabs=1e-13)[0],
        np.sqrt(integrate.quad(lambda x: g(x) ** 2, -np.inf, np.inf, epsabs=1e-14)[0]),
        g(0.0),
        2 * integrate.quad(lambda x: abs(gx(x)), 0, np.inf, epsabs=1e-13)[0],
        np.sqrt(integrate.quad(lambda x: gx(x) ** 2, -np.inf, np.inf, epsabs=1e-14)[0]),
        abs(gx(np.sqrt(2 * t))),  # |G_x| peaks at x^2 = 2t
    )
    assert np.allclose(kernel_norm_table(t), ref, rtol=0, atol=1e-8)


def test_kernel_norm_table_values():
    tab = kernel_norm_table(1.0)
    assert tab[0] == 1.0
    assert tab[2] == pytest.approx(0.28209479177, abs=1e-10)


def test_dirichlet_trivial_cases():
    zero = PerturbationField(0.01, np.zeros(500))
    assert dirichlet_halfline(zero, 1.0, 0.7) == 0.0
    assert dirichlet_halfline(YGAUSS, 0.5, 0.0) == 0.0
    with pytest.raises(InvalidInput):
        dirichlet_halfline(YGAUSS, 0.5, -1.0)
    with pytest.raises(InvalidInput):
        dirichlet_halfline(YGAUSS, 0.0, 1.0)


def test_dirichlet_against_trapezoid_oracle():
    y = np.linspace(0.0, 12.0, 1_000_001)
    t, x = 0.5, 1.0
    kern = gauss_kernel(t, x - y) - gauss_kernel(t, x + y)
    ref = np.trapezoid(YGAUSS(y) * kern, y)
    assert dirichlet_halfline(YGAUSS, t, x, QUAD) == pytest.approx(ref, abs=1e-6)
    sampled = PerturbationField.from_function(YGAUSS, 0.005, 12.0, derivs=0)
    assert dirichlet_halfline(sampled, t, x, QUAD) == pytest.approx(ref, abs=1e-5)


def test_inhomog_reduces_and_vanishes_at_boundary():
    f0 = lambda tau, y: np.zeros_like(y)
    assert dirichlet_halfline_inhomog(YGAUSS, f0, 0.5, 1.0, QUAD) == pytest.approx(
        dirichlet_halfline(YGAUSS, 0.5, 1.0, QUAD), abs=1e-14)
    f = lambda tau, y: np.exp(-tau) * y * np.exp(-y * y)
    assert abs(dirichlet_halfline_inhomog(YGAUSS, f, 0.5, 0.0, QUAD)) < 1e-14


def test_inhomog_against_2d_oracle():
    zero = PolyExp((0.0,), "gauss")
    f = lambda tau, y: np.exp(-tau) * y * np.exp(-y * y)
    t, x = 0.5, 0.8

    def inner(s):
        tau = t - s * s
        val = integrate.quad(lambda y: f(tau, y) * (gauss_kernel(s * s, x - y) - gauss_kernel(s * s, x + y)),
                             0, 10, points=[x], limit=200, epsabs=1e-13)[0]
        return 2 * s * val

    ref = integrate.quad(inner, 1e-12, np.sqrt(t), limit=200, epsabs=1e-12)[0]
    assert dirichlet_halfline_inhomog(zero, f, t, x, QUAD) == pytest.approx(ref, abs=1e-5)


def test_odd_exact_zero_and_boundary_identity():
    zero = PolyExp((0.0,), "exp")
    for k in range(3):
        assert odd_exact_solution(zero, 1.0, 0.5, k, QUAD) == 0.0
    for t in (0.25, 1.0, 4.0):
        s = odd_exact_solution(YEXP, t, 1e-12, 1, QUAD) + odd_exact_solution(YEXP, t, 1e-12, 2, QUAD)
        assert abs(s) < 1e-9


def test_odd_exact_requires_derivative_samples():
    field = PerturbationField(0.01, 0.01 * np.arange(100))
    with pytest.raises(InvalidInput):
        odd_exact_solution(field, 1.0, 0.5, 1, QUAD)


def test_odd_exact_solves_the_pde():
    # u_t = u_x + u_xx checked by central differences of the oracle itself
    t, x, d = 0.7, 1.3, 1e-4
    u = lambda tt, xx: odd_exact_solution(YEXP, tt, xx, 0, QUAD)
    ut = (u(t + d, x) - u(t - d, x)) / (2 * d)
    ux = odd_exact_solution(YEXP, t, x, 1, QUAD)
    uxx = odd_exact_solution(YEXP, t, x, 2, QUAD)
    assert ut == pytest.approx(ux + uxx, abs=1e-7)
    assert (u(t, x + d) - u(t, x - d)) / (2 * d) == pytest.approx(ux, abs=1e-8)


def test_odd_exact_sampled_matches_callable():
    field = PerturbationField.from_function(YEXP, 0.005, 40.0)
    x = np.linspace(0, 5, 11)
    for k in range(3):
        a = odd_exact_solution(field, 1.0, x, k, QUAD)
        b = odd_exact_solution(YEXP, 1.0, x, k, QUAD)
        assert np.max(np.abs(a - b)) < 1e-5


@pytest.mark.parametrize("t", [1.0, 4.0, 16.0])
def test_odd_sup_decay_bound(t):
    l2 = np.sqrt(integrate.quad(lambda y: YEXP(y) ** 2, 0, np.inf)[0])
    x = np.linspace(0, 40, 2001)
    sup = np.abs(odd_exact_solution(YEXP, t, x, 0, QUAD)).max()
    assert sup <= 2 * (8 * np.pi * t) ** -0.25 * l2


def test_odd_l2_bounds():
    y = np.linspace(0, 60, 12001)
    n = [np.sqrt(np.trapezoid(YEXP(y, k) ** 2, y)) for k in range(3)]
    for t in (0.5, 2.0):
        u = [odd_exact_solution(YEXP, t, y, k, QUAD) for k in range(3)]
        m = [np.sqrt(np.trapezoid(v * v, y)) for v in u]
        assert m[0] <= 2 * n[0]
        assert m[1] <= 2 * n[1] + n[0]
        assert m[2] <= 2 * n[2] + 2 * n[1] + n[0]


def test_nu_zero_and_oracle():
    zero = GammaSignal(0.01, np.zeros(201))
    assert nu_solution(zero, 1.0, 0.3, 0, QUAD) == 0.0
    assert nu_boundary_residual(zero, 1.0, 1, QUAD) == 0.0
    one = lambda t: np.ones_like(np.asarray(t, dtype=float))
    # t - tau = s^2 removes the inverse square root
    ref = integrate.quad(lambda s: 2 * 2 * s * (4 * np.pi * s * s) ** -0.5 * np.exp(-s * s / 4), 0, 1,
                         epsabs=1e-14)[0]
    assert nu_solution(one, 1.0, 0.0, 0, QUAD) == pytest.approx(ref, abs=1e-7)


def test_nu_sup_bound():
    gam = lambda t: np.sin(3 * np.asarray(t, dtype=float))
    t = 2.0
    y = np.linspace(0, 15, 301)
    sup = np.abs(nu_solution(gam, t, y, 0, QUAD)).max()
    rhs = integrate.quad(lambda tau: abs(gam(tau)) / np.sqrt(np.pi * (t - tau)), 0, t, limit=200)[0]
    assert sup <= rhs


def test_nu_gradient_bound_sampled():
    gam = lambda t: np.cos(np.asarray(t, dtype=float))
    for t in (0.5, 2.0):
        y = np.linspace(1e-9, 15, 301)
        nu = np.abs(nu_solution(gam, t, y, 0, QUAD)).max()
        nuy = np.abs(nu_solution(gam, t, y, 1, QUAD)).max()
        assert nuy <= 0.5 * nu + abs(gam(t)) + 1e-9


@pytest.mark.parametrize("side", [1, -1])
def test_nu_boundary_examples(side):
    one = lambda t: np.ones_like(np.asarray(t, dtype=float))
    assert abs(nu_boundary_residual(one, 1.0, 1, QUAD)) < 1e-5
    assert abs(nu_boundary_residual(lambda t: np.sin(t), 2.0, side, QUAD)) < 1e-4


def test_nu_residual_shrinks_with_refinement():
    gam = lambda t: np.sin(np.asarray(t, dtype=float))
    res = [abs(nu_boundary_residual(gam, 2.0, 1, QuadratureSpec(n_time=n))) for n in (16, 64)]
    assert res[1] <= res[0] + 1e-12


def test_nu_horizon_checked():
    short = GammaSignal(0.1, np.ones(5))
    with pytest.raises(InvalidInput):
        nu_solution(short, 2.0, 0.0)
