"""Exception hierarchy shared across the pipeline."""


class RelarmError(Exception):
    """Base class for all pipeline errors."""


class ValidationError(RelarmError, ValueError):
    """Bad input: malformed files, out-of-range parameters, shape mismatches."""


class NumericalError(RelarmError, ArithmeticError):
    """Numerical failure, e.g. the eigensolver hit its iteration cap."""
