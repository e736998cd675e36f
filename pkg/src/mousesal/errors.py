"""Exception types shared across the toolkit."""


class MousesalError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(MousesalError, ValueError):
    """An argument is out of its documented range or otherwise unusable."""


class ShapeMismatchError(MousesalError, ValueError):
    """Two arrays that must share dimensions do not."""


class ConsistencyError(MousesalError, ValueError):
    """Inputs that must refer to the same entity (e.g. one video) do not."""


class UndefinedMetricError(MousesalError, ValueError):
    """A metric has no defined value for these inputs (e.g. an all-zero map)."""
