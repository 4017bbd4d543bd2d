"""Exception hierarchy shared by every module."""


class MeasureKitError(Exception):
    """Base class for all library errors."""


class SpaceMismatchError(MeasureKitError):
    """Two objects were expected to live on the same ground set or sigma-field."""


class NotMeasurableError(MeasureKitError):
    """A set or function is not measurable for the relevant sigma-field."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GroundSizeError(MeasureKitError):
    """A member-enumerating operation was asked to work on too large a ground set."""


class SigmaFiniteError(MeasureKitError):
    """A sigma-finiteness premise fails (some atom carries infinite weight)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AbsoluteContinuityError(MeasureKitError):
    """mu << nu fails; ``witness`` is an atom with nu-weight 0 and positive mu-weight."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IllDefinedIntegralError(MeasureKitError):
    """Both the positive and the negative part of an integral are infinite."""


class PremiseError(MeasureKitError):
    """A theorem premise required by a strict operation does not hold."""


class NotDistributionError(MeasureKitError):
    """A CDF specification is not a distribution function."""


class ParseError(MeasureKitError):
    """Malformed workspace document or scalar literal."""
