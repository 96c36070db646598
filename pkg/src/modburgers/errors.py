"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Input violates a documented precondition."""


class ConfigError(InvalidInput):
    """Bad or unknown configuration entry."""


class SolverError(RuntimeError):
    """A time-stepping run failed; ``trajectory`` holds what was computed."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class NonConvergence(RuntimeError):
    """Fixed-point iteration stopped without meeting the tolerance."""

    def __init__(self, message, history=None, state=None):
        super().__init__(message)
        self.history = history if history is not None else []
        self.state = state
