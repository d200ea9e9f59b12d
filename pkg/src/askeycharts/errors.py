"""Exception types shared across the package."""

__all__ = [
    "AskeyError",
    "NonFiniteCoefficient",
    "SingularHankel",
    "PoleInLowerParameter",
    "NormalizationPole",
    "OutOfDomain",
    "UnknownSuite",
    "InsufficientSamples",
    "SamplingExhausted",
]


class AskeyError(Exception):
    """Base class for package-specific errors."""


class NonFiniteCoefficient(AskeyError, ArithmeticError):
    """A recurrence coefficient evaluated to NaN or infinity."""


class SingularHankel(AskeyError, ArithmeticError):
    """A leading Hankel determinant needed for normalization vanished."""


class PoleInLowerParameter(AskeyError, ArithmeticError):
    """A lower-parameter Pochhammer factor vanished before the sum terminated."""


class NormalizationPole(AskeyError, ArithmeticError):
    """The monic normalization factor has a pole at these parameters."""


class OutOfDomain(AskeyError, ValueError):
    """Input violates a documented domain inequality (named in the message)."""


class UnknownSuite(AskeyError, KeyError):
    """Requested verification suite name does not exist."""


class InsufficientSamples(AskeyError, ValueError):
    """Too few samples to run the requested fit."""


class SamplingExhausted(AskeyError, RuntimeError):
    """Rejection sampling failed to find enough admissible points."""
