"""Exception types raised across the package."""


class SeriesError(ValueError):
    """Base class for rejected inputs and violated preconditions."""


class CenterMismatchError(SeriesError):
    pass


class DomainError(SeriesError):
    """A point lies outside the region where the operation is valid."""


class DivisionAtCenterError(SeriesError, ZeroDivisionError):
    pass


class NullFunctionError(SeriesError):
    pass


class PreconditionError(SeriesError):
    pass


class DegenerateError(SeriesError):
    pass


class CriticalCenterError(SeriesError):
    pass


class SingularNodeError(SeriesError, ZeroDivisionError):
    pass


class EmptyFamilyError(SeriesError):
    pass


class NonFiniteSampleError(SeriesError):
    """An oracle returned NaN or infinity.

    ``angle`` carries the offending angle when sampling a circle.
    """

    def __init__(self, message, point=None, angle=None):
        super().__init__(message)
        self.point = point
        self.angle = angle
