# util/errors.py


class LabError(Exception):
    """Base class for every failure a command reports instead of crashing."""

    exit_code = 1


class SchemaError(LabError, ValueError):
    """Malformed input: bad JSON shape, non-square matrix, unknown label."""

    exit_code = 1


class HypothesisError(LabError):
    """A mathematical precondition of the requested computation fails."""

    exit_code = 2


class UndecidableError(HypothesisError):
    """Two moduli could not be separated or identified at the working tolerance."""

    def __init__(self, message: str = "undecidable at tolerance"):
        super().__init__(message)


class FragmentError(HypothesisError):
    """The operation needs every Hodge block but only H^{1,1} is known."""
