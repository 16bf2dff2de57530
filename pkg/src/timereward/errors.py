"""Exception types shared across the library."""


class TimeRewardError(Exception):
    """Base class for all library errors."""


class InvalidCoalitionKey(TimeRewardError):
    """A coalition key string is malformed for the given party count."""


class MissingCoalition(TimeRewardError):
    """A table-backed game was asked for a coalition it does not define."""


class TooLarge(TimeRewardError):
    """The party count exceeds the exact-enumeration ceiling for this operation."""


class AxiomViolation(TimeRewardError):
    """An input game fails the non-negativity/superadditivity precheck."""


class NumericalFailure(TimeRewardError):
    """A matrix factorization failed even after jitter escalation."""


class TargetOutOfRange(TimeRewardError):
    """A realization target lies outside the achievable value range."""


class SizesExceedData(TimeRewardError):
    """Requested partition sizes exceed the number of available points."""


class ZeroVariance(TimeRewardError):
    """Standardization requested for a constant target vector."""


class LengthMismatch(TimeRewardError):
    """Paired sequences have different lengths."""


class PreconditionViolated(TimeRewardError):
    """An operation was called outside its stated precondition."""
