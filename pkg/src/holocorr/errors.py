"""Exception types shared across holocorr."""


class HolocorrError(Exception):
    """Base class for all computation errors raised by this package."""


class PoleInput(HolocorrError, ZeroDivisionError):
    pass


class InvalidParam(HolocorrError, ValueError):
    pass


class DomainError(HolocorrError, ValueError):
    pass


class DegenerateParam(HolocorrError, ValueError):
    pass


class BranchTrackingLost(HolocorrError):
    pass


class BranchPointOnCycle(HolocorrError):
    pass


class NoConvergence(HolocorrError):
    pass


class NotHyperbolic(HolocorrError):
    pass


class PeriodMismatch(HolocorrError):
    pass


class NotInPetal(HolocorrError):
    pass


class NotInShiftLocus(HolocorrError):
    pass


class InversionFailure(HolocorrError):
    pass
