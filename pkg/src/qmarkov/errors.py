"""Exception types shared across the package.

Validation never silently repairs data: a distribution that does not sum
to one, a matrix row that is not stochastic, or an out-of-range quantum
number is reported through one of these exceptions instead of being
normalized away.
"""


class QmarkovError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(QmarkovError):
    """An argument is outside its documented domain."""


class RangeLimitError(InvalidArgumentError):
    """A size parameter exceeds the supported numerical range."""


class InvalidDistributionError(QmarkovError):
    """A probability vector has a negative entry or does not sum to one."""


class InvalidStateError(QmarkovError):
    """A quantum state vector is not normalized or has the wrong dimension."""


class DimensionMismatchError(QmarkovError):
    """Two objects that must share an outcome label set do not."""


class InternalConsistencyError(QmarkovError):
    """Two redundant internal computations disagree; indicates a bug."""


class ConvergenceError(QmarkovError):
    """Iteration failed to converge within the allowed number of steps.

    Carries the last iterate and its residual so callers can inspect or
    report partial progress.
    """

    def __init__(self, message, last_iterate, residual, iterations):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations


class UndefinedTestError(QmarkovError):
    """A statistical test has no valid cells left after pooling."""


class FormatError(QmarkovError):
    """A serialized artifact violates its file format.

    ``line`` is the 1-based offending line number when known.
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
