"""Modular Burgers equation: shocks, integral equations and finite differences."""

from ._backend import BACKEND
from .errors import ConfigError, InvalidInput, NonConvergence, SolverError
from .fields import GammaSignal, PerturbationField
from .quadrature import QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigError",
    "GammaSignal",
    "InvalidInput",
    "NonConvergence",
    "PerturbationField",
    "QuadratureSpec",
    "SolverError",
    "__version__",
]
