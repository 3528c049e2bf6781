"""Exception and warning types shared across the package."""


class PfadistError(Exception):
    """Base class for all package errors."""


class DimensionError(PfadistError):
    """Operands do not share a common dimension."""


class EmptyInput(PfadistError):
    """An operation received an empty sequence."""


class SingularMatrix(PfadistError):
    """Matrix inversion hit a pivot below the singularity threshold."""


class DuplicatePoints(PfadistError):
    """Indicator is undefined on point sets with coincident points."""


class DegenerateWeight(PfadistError):
    """A weight vector cannot be mapped onto the requested front."""


class UnsupportedFront(PfadistError):
    """Point set does not lie on a constant-sum hyperplane."""


class InsufficientDense(PfadistError):
    """Dense sample too small to build the requested subset."""


class EmptyReference(PfadistError):
    """Reference set for a coverage indicator is empty."""


class MixedIndicators(PfadistError):
    """Ranking received results from more than one indicator."""


class ScaleMismatch(PfadistError):
    """Grading scale does not match the number of ranked variants."""


class EmptyTable(PfadistError):
    """Plot emission received a table with no rows."""


class ParseError(PfadistError):
    """Malformed input file.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateAxisWarning(UserWarning):
    """Normalization collapsed an objective with zero spread to 0."""
