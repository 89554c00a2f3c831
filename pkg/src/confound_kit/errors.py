"""Exception types shared across the package."""


class ConfoundKitError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(ConfoundKitError, ValueError):
    """A parameter set, joint weight vector, or count table violates its domain."""


class DegenerateEventError(ConfoundKitError, ValueError):
    """A required conditioning event has probability zero.

    Raised instead of returning a value so that "undefined" stays
    distinguishable from "false" or "zero".
    """


class ConstraintError(ConfoundKitError, RuntimeError):
    """A hypothesis set could not be imposed on model parameters."""


class TableFormatError(ConfoundKitError, ValueError):
    """A stratified-counts CSV source is malformed."""
