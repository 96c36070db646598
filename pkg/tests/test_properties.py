"""Randomised property checks; each ``check_*`` takes a Generator so it can be reused by the acceptance suite."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modburgers.diagnostics import (
    convolution_bound_check,
    discrete_norms,
    young_sup_check,
    young_time_check,
)
from modburgers.fields import PerturbationField
from modburgers.heat_kernel import dirichlet_halfline
from modburgers.initial_data import PolyExp
from modburgers.quadrature import QuadratureSpec

QUAD = QuadratureSpec()
SEEDS = st.integers(0, 2**32 - 1)
REL = 1 + 1e-12


def random_polyexp(rng, positive=False):
    deg = rng.integers(1, 4)
    c = rng.uniform(0.0 if positive else -1.0, 1.0, deg + 1)
    c[0] = 0.0
    return PolyExp(tuple(c), "exp" if rng.random() < 0.5 else "gauss")


def check_norm_orderings(rng):
    h = rng.uniform(0.005, 0.05)
    if rng.random() < 0.5:
        field = PerturbationField.from_function(random_polyexp(rng), h, 30.0)
    else:
        n = int(rng.integers(10, 400))
        field = PerturbationField(h, *rng.standard_normal((3, n)))
    rep = discrete_norms(field, alpha=rng.uniform(0.01, 0.5))
    assert rep.l2 <= rep.h1 <= rep.h2
    assert rep.linf <= rep.w1inf <= rep.w2inf
    assert rep.linf <= rep.alpha_weighted_w2inf


def check_young_sup(rng):
    f = rng.standard_normal(int(rng.integers(5, 300)))
    g = rng.standard_normal(int(rng.integers(5, 300)))
    lhs, rhs = young_sup_check(f, g, rng.uniform(0.001, 0.5))
    assert lhs <= rhs * REL


def check_young_time(rng):
    n = int(rng.integers(5, 400))
    lhs, rhs = young_time_check(rng.standard_normal(n), rng.standard_normal(n), rng.uniform(0.001, 0.2))
    assert lhs <= rhs * REL


def check_convolution_bound(rng, s):
    n = int(rng.integers(10, 500))
    T = rng.uniform(0.1, 10.0)
    cells = rng.standard_normal(n) * rng.uniform(0.01, 5.0)
    if rng.random() < 0.5:
        cells *= np.exp(-rng.uniform(0, 3) * np.linspace(0, T, n))
    lhs, rhs = convolution_bound_check(cells, T / n, s)
    assert lhs <= rhs * REL


def check_semigroup(rng):
    v0 = random_polyexp(rng)
    t1, t2 = rng.uniform(0.1, 1.0, 2)
    h = 0.01
    y = h * np.arange(3001)
    mid = PerturbationField(h, dirichlet_halfline(v0, t1, y, QUAD))
    x = rng.uniform(0.0, 5.0, 5)
    two_step = dirichlet_halfline(mid, t2, x, QUAD)
    one_step = dirichlet_halfline(v0, t1 + t2, x, QUAD)
    assert np.abs(two_step - one_step).max() <= 1e-5


def check_maximum_principle(rng):
    positive = rng.random() < 0.5
    v0 = random_polyexp(rng, positive)
    y = np.linspace(0.0, 30.0, 1201)
    sup0 = np.abs(v0(np.linspace(0.0, 30.0, 300001))).max()
    v = dirichlet_halfline(v0, rng.uniform(0.01, 5.0), y, QUAD)
    assert np.abs(v).max() <= sup0 * (1 + 1e-9) + 1e-14
    if positive:
        assert v.min() >= -1e-14


CHECKS = {
    "norm orderings": check_norm_orderings,
    "young sup": check_young_sup,
    "young time": check_young_time,
    "convolution bound s=1/4": lambda rng: check_convolution_bound(rng, 0.25),
    "convolution bound s=1/2": lambda rng: check_convolution_bound(rng, 0.5),
    "convolution bound s=3/4": lambda rng: check_convolution_bound(rng, 0.75),
    "dirichlet semigroup": check_semigroup,
    "dirichlet maximum principle": check_maximum_principle,
}


@given(SEEDS)
def test_norm_orderings(seed):
    check_norm_orderings(np.random.default_rng(seed))


@given(SEEDS)
def test_young_sup(seed):
    check_young_sup(np.random.default_rng(seed))


@given(SEEDS)
def test_young_time(seed):
    check_young_time(np.random.default_rng(seed))


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
@given(seed=SEEDS)
def test_convolution_bound(s, seed):
    check_convolution_bound(np.random.default_rng(seed), s)


@given(SEEDS)
def test_dirichlet_semigroup(seed):
    check_semigroup(np.random.default_rng(seed))


@given(SEEDS)
def test_dirichlet_maximum_principle(seed):
    check_maximum_principle(np.random.default_rng(seed))
