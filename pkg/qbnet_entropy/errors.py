"""Exception hierarchy for qbnet-entropy.

Every error derives from `QbnetError`, which is a `ValueError`, so callers that
only care about "bad input" can keep catching `ValueError`.
"""


class QbnetError(ValueError):
    """Base class for all library errors."""


class LayoutError(QbnetError):
    """Unknown, duplicated or oversized subsystem labels."""


class DimensionError(QbnetError):
    """Matrix or table shapes that do not fit together."""


class InvariantError(QbnetError):
    """A value violates its type invariants.

    Attributes:
        deviation: Largest observed deviation from the invariant.
    """

    def __init__(self, message: str, deviation: float) -> None:
        """Initialize the error.

        Args:
            message: Human-readable description.
            deviation: Largest observed deviation.
        """
        super().__init__(message)
        self.deviation = deviation


class ChannelError(QbnetError):
    """Kraus sets that are not valid channels for the requested operation."""


class NetError(QbnetError):
    """Invalid QB nets or inconsistent amplitudes."""


class PurityError(QbnetError):
    """A pure state was required but a mixed one was given."""


class InstanceShapeError(QbnetError):
    """A checker received an instance of the wrong shape."""


class ConfigError(QbnetError):
    """Invalid run configuration."""


class RumError(QbnetError):
    """Invalid roots-of-unity model request."""


class FormatError(QbnetError):
    """A serialized document that cannot be decoded."""
