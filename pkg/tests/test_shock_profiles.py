import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modburgers.errors import InvalidInput
from modburgers.shock_profiles import (
    ShockProfile,
    eval_shock,
    interface_jump_residual,
    map_from_normalized,
    map_to_normalized,
    shock_speed,
)


@pytest.mark.parametrize("wp, wm, c", [(1, -1, 0.0), (1, -2, 1 / 3), (2, -1, -1 / 3)])
def test_shock_speed_examples(wp, wm, c):
    assert shock_speed(wp, wm) == pytest.approx(c, abs=1e-15)


def test_shock_speed_rejects_same_sign():
    with pytest.raises(InvalidInput):
        shock_speed(1.0, 0.5)


def test_symmetric_profile_values():
    prof = ShockProfile.from_states(1, -1)
    assert eval_shock(prof, 0.0, 0) == 0.0
    assert eval_shock(prof, 0.0, 1) == pytest.approx(1.0)
    assert eval_shock(prof, 50.0, 0) == pytest.approx(1.0, abs=1e-15)
    assert eval_shock(prof, -50.0, 0) == pytest.approx(-1.0, abs=1e-15)


def test_one_sided_slopes_agree():
    prof = ShockProfile.from_states(1, -2)
    right = eval_shock(prof, 0.0, 1, side=1)
    left = eval_shock(prof, 0.0, 1, side=-1)
    # symbolic derivative of each branch: W+(1+c) and -W-(1-c)
    assert right == pytest.approx(4 / 3, abs=1e-14)
    assert left == pytest.approx(4 / 3, abs=1e-14)


def test_second_derivative_needs_side():
    prof = ShockProfile.from_states(1, -1)
    with pytest.raises(InvalidInput):
        eval_shock(prof, 0.0, 2)
    assert eval_shock(prof, 0.0, 2, side=1) - eval_shock(prof, 0.0, 2, side=-1) == pytest.approx(-2.0)


@pytest.mark.parametrize("wp, wm", [(1, -1), (1, -2)])
def test_jump_residual_zero(wp, wm):
    assert abs(interface_jump_residual(ShockProfile.from_states(wp, wm))) <= 1e-12


def test_jump_residual_detects_bad_speed():
    good = ShockProfile.from_states(1, -2)
    bad = ShockProfile(good.w_plus, good.w_minus, good.c + 0.1)
    assert abs(interface_jump_residual(bad)) > 1e-3


def test_constructor_rejects_fast_speed():
    with pytest.raises(InvalidInput):
        ShockProfile(1.0, -1.0, 1.5)


def test_normalized_map_examples():
    prof = ShockProfile.from_states(1, -1)
    assert map_to_normalized(2.0, -3.0, prof) == (2.0, -3.0, -1)
    t, y, br = map_to_normalized(9.0, 4.0, ShockProfile.from_states(1, -2))
    assert (t, y, br) == (pytest.approx(16.0), pytest.approx(4 / 3), 1)
    assert map_to_normalized(1.0, 0.0, prof)[2] == 0


def test_normalized_round_trip(rng):
    prof = ShockProfile.from_states(1, -2)
    for t, x in zip(rng.uniform(0, 10, 100), rng.uniform(-10, 10, 100)):
        back = map_from_normalized(*map_to_normalized(t, x, prof), prof)
        assert back == (pytest.approx(t, abs=1e-12), pytest.approx(x, abs=1e-12))


@given(st.floats(0.05, 5.0), st.floats(-5.0, -0.05))
def test_profile_properties(wp, wm):
    prof = ShockProfile.from_states(wp, wm)
    assert abs(interface_jump_residual(prof)) <= 1e-12 * max(1.0, wp, -wm) * 4
    eps = 1e-9
    assert abs(eval_shock(prof, eps, 0) - eval_shock(prof, -eps, 0)) < 1e-7 * max(wp, -wm)
    assert eval_shock(prof, 0.0, 1, side=1) == pytest.approx(eval_shock(prof, 0.0, 1, side=-1), rel=1e-12)
    x = np.linspace(-20, 20, 81)
    x = x[x != 0]
    assert np.all(np.sign(eval_shock(prof, x, 0)) == np.sign(x))
    # tails approach the states at rates 1 +- c
    xp, xm = 5.0 / prof.rate_plus, -5.0 / prof.rate_minus
    assert wp - eval_shock(prof, xp, 0) == pytest.approx(wp * np.exp(-5.0), rel=1e-9)
    assert eval_shock(prof, xm, 0) - wm == pytest.approx(-wm * np.exp(-5.0), rel=1e-9)
