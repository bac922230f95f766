"""Exception hierarchy shared by every stage of the pipeline."""


class GroverWalkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GroverWalkError, ValueError):
    """Malformed input: wrong shape, bad parameters, broken file."""


class HypothesisError(ValidationError):
    """Input is well formed but outside the class the construction supports
    (not distance-regular, singular adjacency matrix, ...)."""


class InternalConsistencyError(GroverWalkError, RuntimeError):
    """Two routes to the same object disagreed."""


class TheoremViolation(GroverWalkError, ArithmeticError):
    """A numerical identity that must hold failed its tolerance."""
