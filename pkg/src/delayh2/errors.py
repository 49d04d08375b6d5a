"""Exception hierarchy for delayh2."""


class DelayH2Error(Exception):
    """Base class for all package errors."""


class ValidationError(DelayH2Error, ValueError):
    """Input data violates a structural or definiteness assumption."""


class NumericalError(DelayH2Error, ArithmeticError):
    """A numerical procedure failed (non-convergence, singularity)."""


class NotSymmetric(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class UnstableA(ValidationError):
    pass


class UnstableSystem(ValidationError):
    pass


class SingularHessian(NumericalError):
    pass


class SingularResolvent(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class NotStabilizing(NumericalError):
    pass


class NonStrictlyProper(ValidationError):
    pass


class DelayExceedsHorizon(ValidationError):
    pass


class IllConditioned(NumericalError):
    pass
