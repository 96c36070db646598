"""Sampled half-line fields and interface-velocity signals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInput


def _as_vector(name, data, length=None):
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional")
    if length is not None and arr.size != length:
        raise InvalidInput(f"{name} must have the same length as values")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PerturbationField:
    """Samples ``u(y_n)`` with ``y_n = n * grid_step`` and optional derivatives."""

    grid_step: float
    values: np.ndarray
    d1: np.ndarray | None = None
    d2: np.ndarray | None = None

    def __post_init__(self):
        if not self.grid_step > 0:
            raise InvalidInput("grid_step must be positive")
        vals = _as_vector("values", self.values)
        if vals.size < 2:
            raise InvalidInput("a field needs at least two samples")
        object.__setattr__(self, "values", vals)
        for name in ("d1", "d2"):
            data = getattr(self, name)
            if data is not None:
                object.__setattr__(self, name, _as_vector(name, data, vals.size))

    @property
    def y(self) -> np.ndarray:
        return self.grid_step * np.arange(self.values.size)

    @property
    def y_end(self) -> float:
        return self.grid_step * (self.values.size - 1)

    @classmethod
    def from_function(cls, fn: Callable, h: float, y_end: float, derivs: int = 2):
        """Sample ``fn(y, k)`` (k-th derivative) on ``[0, y_end]``."""
        n = int(round(y_end / h))
        y = h * np.arange(n + 1)
        parts = [fn(y, k) for k in range(derivs + 1)]
        parts += [None] * (3 - len(parts))
        return cls(h, parts[0], parts[1], parts[2])

    def require(self, order: int) -> None:
        if order >= 1 and self.d1 is None:
            raise InvalidInput("first-derivative samples (d1) are required")
        if order >= 2 and self.d2 is None:
            raise InvalidInput("second-derivative samples (d2) are required")

    def scaled(self, a: float) -> "PerturbationField":
        mul = (lambda v: None if v is None else a * v)
        return PerturbationField(self.grid_step, a * self.values, mul(self.d1), mul(self.d2))

    def __call__(self, y):
        """Piecewise-linear interpolant, zero beyond the sampled range."""
        return np.interp(y, self.y, self.values, left=np.nan, right=0.0)


@dataclass(frozen=True, eq=False)
class GammaSignal:
    """Samples ``gamma(t_k)`` with ``t_k = k * time_step``; linear in between."""

    time_step: float
    values: np.ndarray

    def __post_init__(self):
        if not self.time_step > 0:
            raise InvalidInput("time_step must be positive")
        vals = _as_vector("values", self.values)
        if vals.size < 1:
            raise InvalidInput("a signal needs at least one sample")
        object.__setattr__(self, "values", vals)

    @property
    def times(self) -> np.ndarray:
        return self.time_step * np.arange(self.values.size)

    @property
    def t_end(self) -> float:
        return self.time_step * (self.values.size - 1)

    @classmethod
    def from_function(cls, fn: Callable, dt: float, t_end: float):
        n = int(round(t_end / dt))
        return cls(dt, fn(dt * np.arange(n + 1)))

    def __call__(self, t):
        if self.values.size == 1:
            return np.full_like(np.asarray(t, dtype=float), self.values[0])
        return np.interp(t, self.times, self.values)


def as_time_function(gamma) -> Callable:
    """Accept a GammaSignal or a vectorised callable of time."""
    if isinstance(gamma, GammaSignal):
        return gamma
    if callable(gamma):
        return lambda t: np.broadcast_to(gamma(np.asarray(t, dtype=float)), np.shape(t)).astype(float)
    raise InvalidInput("gamma must be a GammaSignal or a callable")
