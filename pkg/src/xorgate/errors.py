"""Exception types raised across the package."""


class XorGateError(Exception):
    """Base class for all package errors."""


class NotHermitian(XorGateError, ValueError):
    pass


class NotNormal(XorGateError, ValueError):
    pass


class NotUnitary(XorGateError, ValueError):
    pass


class DimensionMismatch(XorGateError, ValueError):
    pass


class LengthMismatch(XorGateError, ValueError):
    pass


class InvalidOptions(XorGateError, ValueError):
    pass


class FormatError(XorGateError, ValueError):
    """A text file does not follow its declared format."""
