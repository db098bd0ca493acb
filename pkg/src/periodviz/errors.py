"""Exception hierarchy.

Input errors (bad arguments) and hypothesis violations (a theorem does not
apply to the given inputs) are kept apart so the CLI can map them to
different exit codes.
"""


class PeriodvizError(Exception):
    """Base class for every error raised by this package."""


class NotAUnit(PeriodvizError, ValueError):
    pass


class NotCoprime(PeriodvizError, ValueError):
    pass


class CoefficientOverflow(PeriodvizError, OverflowError):
    """An integer coefficient left the signed 64-bit range."""


class InvalidLayerModulus(PeriodvizError, ValueError):
    pass


class NoSuchRoot(PeriodvizError, ValueError):
    pass


class DimensionTooHigh(PeriodvizError, ValueError):
    pass


class DimensionNot2(PeriodvizError, ValueError):
    pass


class EmptyImage(PeriodvizError, ValueError):
    pass


class IoError(PeriodvizError, OSError):
    pass


class UnsupportedFormat(IoError):
    pass


class HypothesisViolated(PeriodvizError):
    """The inputs fall outside the hypotheses of the theorem being checked."""


class OrdersNotCoprime(HypothesisViolated):
    pass
