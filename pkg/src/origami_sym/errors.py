"""Exception hierarchy shared by every module."""


class OrigamiError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidAngle(OrigamiError, ValueError):
    pass


class ParallelLines(OrigamiError, ValueError):
    pass


class NearParallel(OrigamiError, ValueError):
    pass


class TooFewAngles(OrigamiError, ValueError):
    pass


class WrongArity(OrigamiError, ValueError):
    pass


class InvalidIndex(OrigamiError, ValueError):
    pass


class DegenerateRebase(OrigamiError, ZeroDivisionError):
    pass


class OutOfRange(OrigamiError, ValueError):
    pass


class UnreachableGroup(OrigamiError, ValueError):
    pass


class EmptyRender(OrigamiError, ValueError):
    pass
