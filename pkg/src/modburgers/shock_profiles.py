"""Travelling viscous shocks ``W_c`` and their interface conditions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput


def shock_speed(w_plus: float, w_minus: float) -> float:
    """Speed of the shock connecting ``w_minus < 0`` to ``w_plus > 0``."""
    if not (w_minus < 0.0 < w_plus):
        raise InvalidInput("need w_minus < 0 < w_plus")
    return (w_plus + w_minus) / (w_minus - w_plus)


@dataclass(frozen=True)
class ShockProfile:
    """Exact shock profile; build it with :meth:`from_states`."""

    w_plus: float
    w_minus: float
    c: float

    def __post_init__(self):
        if not (self.w_minus < 0.0 < self.w_plus):
            raise InvalidInput("need w_minus < 0 < w_plus")
        if not abs(self.c) < 1.0:
            raise InvalidInput("|c| < 1 violated")

    @classmethod
    def from_states(cls, w_plus: float, w_minus: float) -> "ShockProfile":
        return cls(float(w_plus), float(w_minus), shock_speed(w_plus, w_minus))

    @property
    def rate_plus(self) -> float:
        return 1.0 + self.c

    @property
    def rate_minus(self) -> float:
        return 1.0 - self.c


def eval_shock(profile: ShockProfile, x, deriv: int = 0, side: int | None = None):
    """Evaluate ``W_c`` or one of its first two derivatives.

    ``side`` (+1 or -1) picks the branch at ``x == 0``; it is mandatory for the
    second derivative there because ``W_c''`` jumps across the interface.
    """
    if deriv not in (0, 1, 2):
        raise InvalidInput("deriv must be 0, 1 or 2")
    x = np.asarray(x, dtype=float)
    if deriv == 2 and side is None and np.any(x == 0.0):
        raise InvalidInput("second derivative at x=0 is one-sided; pass side=+1 or -1")
    a, b = profile.rate_plus, profile.rate_minus
    wp, wm = profile.w_plus, profile.w_minus
    if side is None:
        right = x > 0.0
    else:
        right = (x > 0.0) | ((x == 0.0) & (side > 0))
    xp = np.where(right, x, 0.0)
    xm = np.where(right, 0.0, x)
    ep = np.exp(-a * xp)
    em = np.exp(b * xm)
    if deriv == 0:
        out = np.where(right, wp * (1.0 - ep), wm * (1.0 - em))
    elif deriv == 1:
        out = np.where(right, wp * a * ep, -wm * b * em)
    else:
        out = np.where(right, -wp * a * a * ep, -wm * b * b * em)
    return out[()] if out.ndim == 0 else out


def interface_jump_residual(profile: ShockProfile, x0: float = 0.0) -> float:
    """``[W'']`` across ``x0`` plus ``2 W'(x0)``; zero for a valid profile."""
    plus = eval_shock(profile, x0, 2, side=+1)
    minus = eval_shock(profile, x0, 2, side=-1)
    return float(plus - minus + 2.0 * eval_shock(profile, x0, 1, side=+1))


def map_to_normalized(t, x, profile: ShockProfile):
    """Map ``(t, x)`` to the variables in which the shock has unit rates.

    Returns ``(t_norm, y_norm, branch)`` with ``branch`` = sign of ``x - c t``
    (0 on the interface, where the + scaling is used).
    """
    t = np.asarray(t, dtype=float)
    z = np.asarray(x, dtype=float) - profile.c * t
    branch = np.sign(z).astype(int)
    k = np.where(branch < 0, profile.rate_minus, profile.rate_plus)
    out = (k * k * t, k * z, branch)
    if out[0].ndim == 0:
        return float(out[0]), float(out[1]), int(out[2])
    return out


def map_from_normalized(t_norm, y_norm, branch, profile: ShockProfile):
    """Inverse of :func:`map_to_normalized`."""
    branch = np.asarray(branch)
    k = np.where(branch < 0, profile.rate_minus, profile.rate_plus)
    t = np.asarray(t_norm, dtype=float) / (k * k)
    x = np.asarray(y_norm, dtype=float) / k + profile.c * t
    if t.ndim == 0:
        return float(t), float(x)
    return t, x
