"""Exception and warning types raised by trustdyn."""


class TrustDynError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(TrustDynError, ValueError):
    pass


class SingularMatrix(TrustDynError, ArithmeticError):
    pass


class NoConvergence(TrustDynError, ArithmeticError):
    pass


class ZeroRow(TrustDynError, ValueError):
    pass


class EmptyHistory(TrustDynError, ValueError):
    pass


class SingularSystem(TrustDynError, ArithmeticError):
    """One of the two equilibrium inverses does not exist.

    ``which`` is ``"I - AW"`` or ``"uI - vY"``.
    """

    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or f"({which}) is singular")


class DegenerateDenominator(TrustDynError, ArithmeticError):
    pass


class ExcludedPoint(TrustDynError, ValueError):
    pass


class NoBracket(TrustDynError, ValueError):
    pass


class InvalidSpec(TrustDynError, ValueError):
    pass


class InvalidRange(TrustDynError, ValueError):
    pass


class EmptySeries(TrustDynError, ValueError):
    pass


class ConfigError(TrustDynError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class IllConditionedWarning(UserWarning):
    pass
