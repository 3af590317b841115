"""Exception types shared across the package."""


class AnalysisError(Exception):
    """Base class for failures of the numerical or geometric analysis."""


class SingularLimitError(AnalysisError):
    """The full vector field was evaluated at epsilon = 0."""


class ScalingError(AnalysisError):
    """No real scaling exists for the given physical parameter set."""


class NoFoldedNodeError(AnalysisError):
    """An operation required a stable folded node and none exists."""


class CanardPathError(AnalysisError):
    """The strong-canard trajectory could not be continued to its target."""


class OrbitTrappedError(AnalysisError):
    """The slow arc failed to reach the upper fold."""


class NonFiniteDerivativeError(AnalysisError):
    """The vector field returned NaN or infinity during integration."""


class StepUnderflowError(AnalysisError):
    """The adaptive step size collapsed below machine resolution."""
