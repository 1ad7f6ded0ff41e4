"""Exception and warning types raised by eurbounds."""


class EURError(ValueError):
    """Base class for all input and parameter errors in this package."""


class UnsupportedDimensionError(EURError):
    pass


class InvalidInputError(EURError):
    pass


class InvalidDirectionError(EURError):
    pass


class ParameterError(EURError):
    pass


class InvalidStateError(EURError):
    """Raised when a matrix fails density-matrix validation.

    The failed checks are kept on ``violations``.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class GameSpecError(EURError):
    pass


class ConvergenceWarning(UserWarning):
    """Emitted when a measurement optimizer stops at its iteration cap."""
