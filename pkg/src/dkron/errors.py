class DkronError(Exception):
    """Base class for all computation errors raised by the package."""


class PrecisionLoss(DkronError):
    pass


class NotInPeriodDomain(DkronError):
    pass


class OnLattice(DkronError):
    pass


class BoundTooLarge(DkronError):
    pass


class NoIrreducibleTabled(DkronError):
    pass


class ZeroDenominator(DkronError):
    pass


class ConsistencyFailure(DkronError):
    pass


class NotInvertible(DkronError):
    pass


class NotImaginary(DkronError):
    pass


class NotSquarefree(DkronError):
    pass


class NoRecurrence(DkronError):
    pass


class BoundExhausted(DkronError):
    pass
