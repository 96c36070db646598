"""Initial-data presets of the form polynomial x exp(-y) or polynomial x exp(-y^2)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InvalidInput


@dataclass(frozen=True)
class PolyExp:
    """``p(y) * exp(-y)`` (``decay="exp"``) or ``p(y) * exp(-y**2)`` (``"gauss"``)."""

    coeffs: tuple[float, ...]
    decay: str = "exp"

    def __post_init__(self):
        if self.decay not in ("exp", "gauss"):
            raise InvalidInput("decay must be 'exp' or 'gauss'")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs) or (0.0,))

    def derivative(self) -> "PolyExp":
        p = np.array(self.coeffs)
        dp = P.polyder(p) if p.size > 1 else np.zeros(1)
        tail = P.polymulx(p) * -2.0 if self.decay == "gauss" else -p
        return PolyExp(tuple(P.polyadd(dp, tail)), self.decay)

    def __call__(self, y, k: int = 0):
        f = self
        for _ in range(k):
            f = f.derivative()
        y = np.asarray(y, dtype=float)
        env = np.exp(-y * y) if f.decay == "gauss" else np.exp(-y)
        return P.polyval(y, np.array(f.coeffs)) * env

    def combine(self, other: "PolyExp", a: float, b: float) -> "PolyExp":
        """``a * self + b * other``."""
        if other.decay != self.decay:
            raise InvalidInput("cannot combine different decays")
        c = P.polyadd(a * np.array(self.coeffs), b * np.array(other.coeffs))
        return PolyExp(tuple(c), self.decay)


@dataclass(frozen=True)
class Preset:
    name: str
    v_plus: PolyExp
    v_minus: PolyExp

    @property
    def u_plus(self) -> PolyExp:
        return self.v_plus.combine(self.v_minus, 0.5, 0.5)

    @property
    def u_minus(self) -> PolyExp:
        return self.v_minus.combine(self.v_plus, 0.5, -0.5)

    def scaled(self, a: float) -> "Preset":
        z = PolyExp((0.0,), self.v_plus.decay)
        return Preset(f"{self.name}x{a:g}", self.v_plus.combine(z, a, 0.0), self.v_minus.combine(z, a, 0.0))


PRESETS = {
    "IC1": Preset("IC1", PolyExp((0.0, 0.1, -0.05), "gauss"), PolyExp((0.0, 0.0, 0.5), "gauss")),
    "IC2": Preset("IC2", PolyExp((0.0, 0.1, 0.05), "exp"), PolyExp((0.0, 0.0, 0.5), "exp")),
    "ODD": Preset("ODD", PolyExp((0.0, 0.1, -0.05), "gauss"), PolyExp((0.0,), "gauss")),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name.upper()]
    except KeyError:
        raise InvalidInput(f"unknown preset {name!r}; choose one of {', '.join(PRESETS)}") from None


def condition_residuals(v_plus, v_minus) -> dict[str, float]:
    """Boundary/interface residuals of callable data ``v(y, k)`` at y = 0.

    ``v(0) = 0`` for both, ``v^-_y(0) = 0`` and ``v^+_y + v^+_yy = 0`` at 0.
    """
    return {
        "v_plus_at_0": float(v_plus(0.0, 0)),
        "v_minus_at_0": float(v_minus(0.0, 0)),
        "v_minus_slope": float(v_minus(0.0, 1)),
        "interface": float(v_plus(0.0, 1) + v_plus(0.0, 2)),
    }
