"""
ransomgame specific exceptions.

Every exception carries an :attr:`exit_code` which the command line
interface returns when the exception ends a command.

"""


class RansomGameError(Exception):
    """Base class for all ransomgame specific exceptions."""

    exit_code = 1


class ConfigError(RansomGameError):
    """Raised when a run configuration fails validation.

    All problems found in one validation pass are collected in
    :attr:`errors`, so a single report covers the whole document.

    """
    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        super(ConfigError, self).__init__(list(errors))

    def __str__(self):
        return 'invalid configuration:\n  ' + '\n  '.join(self.errors)

    @property
    def errors(self):
        """List of validation messages."""
        return self.args[0]


class InvalidParameters(RansomGameError, ValueError):
    """Raised if game parameters, a valuation distribution or a payment
    willingness violate their invariants."""


class InadmissibleAction(RansomGameError, ValueError):
    """Raised if an action (or a threshold index) is not admissible in the
    requested game variant."""


class DegenerateParameters(RansomGameError):
    """Raised if a threshold cannot be evaluated because the parameters are
    degenerate (for example ``0/0`` in a threshold)."""

    exit_code = 2


class SearchCapExceeded(DegenerateParameters):
    """Raised if no sign change of the region function is found below the
    search cap.

    :attr:`cap` is the largest ransom that was inspected.

    """
    def __init__(self, cap):
        super(SearchCapExceeded, self).__init__(cap)

    def __str__(self):
        return 'no sign change of Psi below r=%r' % self.cap

    @property
    def cap(self):
        return self.args[0]


class FiniteConditionViolated(RansomGameError):
    """Raised if ``r * p2(r)`` is unbounded, so no equilibrium ransom
    exists."""

    exit_code = 3


class OracleFailure(RansomGameError):
    """Raised if the Monte Carlo oracle disagrees with a closed form."""

    exit_code = 4


class PropertyViolation(RansomGameError):
    """Raised if a property check finds violations.

    :attr:`report` holds the full report the violations were found in.

    """
    exit_code = 5

    def __init__(self, message, report=None):
        super(PropertyViolation, self).__init__(message)
        self.report = report


class RandomizationError(RansomGameError, ValueError):
    """Raised if a randomized equilibrium cannot be formed from the given
    weights."""
