"""Quadrature settings and rules for semi-infinite and weakly singular integrals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInput

GL_ORDER = 8
GRADED_LEVELS = 48  # sigma shrinks by 2^-48 towards the singular endpoint


@dataclass(frozen=True)
class QuadratureSpec:
    """Truncation length, panel counts and singular-endpoint split.

    ``n_space`` panels cover spatial (or scaled-Gaussian) ranges, ``n_time``
    panels cover the regular part of time convolutions, and ``sing_split`` is
    the fraction of a time interval next to the singular endpoint that is
    handled with the substitution ``t - tau = s**2`` and geometric grading.
    """

    y_max: float = 40.0
    n_space: int = 64
    n_time: int = 64
    sing_split: float = 0.25

    def __post_init__(self):
        if not self.y_max > 0:
            raise InvalidInput("y_max must be positive")
        if self.n_space < 16 or self.n_time < 16:
            raise InvalidInput("n_space and n_time must be at least 16")
        if not 0.0 < self.sing_split < 1.0:
            raise InvalidInput("sing_split must lie in (0, 1)")


@lru_cache(maxsize=None)
def gauss_legendre(order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def composite_gl(a: float, b: float, panels: int, order: int = GL_ORDER):
    """Composite Gauss-Legendre rule on [a, b] with equal panels."""
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    width = np.diff(edges)[:, None]
    nodes = edges[:-1, None] + width * x[None, :]
    weights = width * w[None, :]
    return nodes.ravel(), weights.ravel()


def graded_rule(length: float, levels: int = GRADED_LEVELS, order: int = GL_ORDER):
    """Rule for ``int_0^length F(s) ds`` with ``F`` singular or peaked at ``s = 0``.

    Uses ``s = sigma**2`` and geometrically graded sigma panels, which absorbs
    ``s**-1/2`` singularities and near-delta kernels such as
    ``y s**-3/2 exp(-y**2/4s)`` for any ``y`` down to ``~2**-levels``.
    """
    smax = np.sqrt(length)
    x, w = gauss_legendre(order)
    edges = smax * 2.0 ** -np.arange(levels + 1, dtype=float)
    edges = np.append(edges, 0.0)[::-1]
    width = np.diff(edges)[:, None]
    sigma = (edges[:-1, None] + width * x[None, :]).ravel()
    wsig = (width * w[None, :]).ravel()
    return sigma**2, 2.0 * sigma * wsig


def time_rule(t: float, quad: QuadratureSpec, both_ends: bool = False):
    """Nodes ``s`` in (0, t) and weights for ``int_0^t F(s) ds``, singular at 0.

    With ``both_ends`` the end s = t is graded as well (square-root behaviour
    of the data at tau = t - s = 0).
    """
    split = quad.sing_split * t
    s1, w1 = graded_rule(split)
    if not both_ends:
        s2, w2 = composite_gl(split, t, max(quad.n_time // GL_ORDER, 2))
        return np.concatenate([s1, s2]), np.concatenate([w1, w2])
    far = max(split, t - split)
    s2, w2 = composite_gl(split, far, max(quad.n_time // GL_ORDER, 2))
    s3, w3 = graded_rule(t - far, levels=20)  # keeps t - s3 representable
    return np.concatenate([s1, s2, t - s3]), np.concatenate([w1, w2, w3])


def gaussian_z_rule(quad: QuadratureSpec, z_lo: float = -7.0, z_hi: float = 7.0):
    """Rule for ``int f(z) exp(-z**2) dz`` truncated to [z_lo, z_hi]."""
    if z_hi <= z_lo:
        return np.zeros(0), np.zeros(0)
    z, w = composite_gl(z_lo, z_hi, quad.n_space)
    return z, w * np.exp(-z * z)
