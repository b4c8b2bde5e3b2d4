"""Exception and warning types shared across the package.

Parameter/regime problems derive from ValueError (the caller passed
something the method does not cover); numerical breakdowns derive from
NumericalError so front ends can map them to a distinct exit code.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class NegativeDiscriminant(ValueError):
    """No real nonnegative factorization (mu, nu) exists: (alpha-gamma)^2 < 4*gamma."""


class RegimeError(ValueError):
    """Operation invoked outside the parameter regime it is valid for."""


class NumericalError(RuntimeError):
    """Base class for numerical failures (quadrature, cross-checks, ...)."""


class QuadratureFailure(NumericalError):
    """Adaptive integration did not reach the requested tolerance."""


class MaxSubdivisions(QuadratureFailure):
    """Adaptive bisection hit its depth limit; integrand is effectively singular."""


class CrossCheckFailure(NumericalError):
    """Two independent evaluation routes disagree beyond tolerance."""


class SelfTestFailure(NumericalError):
    """Redundant internal computation paths disagree; indicates a bug or bad input."""


class ZeroDerivative(NumericalError):
    """|F'| vanished on the evaluation grid; convexity quotient undefined there."""


class TruncationWarning(UserWarning):
    """Truncated-series result whose estimated tail exceeds the requested tolerance."""


class DivergenceWarning(UserWarning):
    """Series acceleration error estimate larger than expected."""


class ApproximateDerivativeWarning(UserWarning):
    """Finite-difference derivatives in use (custom kernels); accuracy is limited."""
