"""Exception types shared across the package."""


class IsoresError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(IsoresError):
    """A constructor parameter is out of its admissible range."""


class ContourInfeasibleError(IsoresError):
    """Requested scaling contour cannot satisfy the argument constraints."""


class ContinuationDomainError(IsoresError):
    """A coefficient was requested outside its declared analyticity sector."""


class EvaluationDomainError(IsoresError):
    """Operator coefficients cannot be evaluated at a requested node."""


class ModeRangeError(IsoresError):
    """A potential component couples outside the assembled mode window."""


class NonConvergenceError(IsoresError):
    """An eigenvalue or refinement computation failed to converge."""


class AmbiguousClusterError(IsoresError):
    """Singular values near the rank tolerance make a rank ill-defined."""


class EigenvalueOnContourError(IsoresError):
    """An eigenvalue lies too close to a quadrature contour."""


class SingularFreeResolventError(IsoresError):
    """Spectral parameter too close to an eigenvalue of the free assembly."""


class WindingError(IsoresError):
    """Argument-principle quadrature did not return a near-integer winding."""


class OverflowGuardError(IsoresError):
    """An exponential factor would exceed floating-point range."""


class ConfigError(IsoresError):
    """Experiment configuration failed validation."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
