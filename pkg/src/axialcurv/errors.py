"""Exception hierarchy shared by all modules."""


class AxialCurvError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(AxialCurvError, ValueError):
    pass


class NotGermError(AxialCurvError, ValueError):
    """A component has a nonzero constant term."""


class CorankError(AxialCurvError, ValueError):
    """The differential at the origin does not have rank n - 1."""


class DegenerateError(AxialCurvError, ValueError):
    pass


class DimensionError(AxialCurvError, ValueError):
    pass


class UnsupportedError(AxialCurvError, NotImplementedError):
    """Requested (n, k) or orbit is outside the covered cases."""


class InfiniteParamError(AxialCurvError, ValueError):
    """The null direction has no point on the unit-tangent cylinder."""


class UndefinedError(AxialCurvError, ValueError):
    pass


class SingularCurveError(AxialCurvError, ValueError):
    pass


class NoCriticalValue(AxialCurvError, ValueError):
    """Raised only for NaN input; an empty critical-value list is a valid result."""
