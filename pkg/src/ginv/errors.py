"""Exception hierarchy shared by all ginv modules."""


class GinvError(Exception):
    """Base class for all errors raised by this package."""


class MalformedScalarError(GinvError):
    """A scalar literal or constructor argument is not a valid field element."""


class FieldMismatchError(GinvError):
    """Operands belong to different scalar fields."""


class ShapeError(GinvError):
    """Matrix shapes are not conformable for the requested operation."""


class DivisionByZeroError(GinvError):
    """Multiplicative inverse of zero was requested."""


class MPNonexistentError(GinvError):
    """The Moore-Penrose inverse does not exist over this field."""


class DrazinUnrepresentableError(GinvError):
    """The Drazin-inverse candidate failed its defining equations."""


class IndexError_(GinvError):
    """A group inverse was requested for a matrix of index >= 2."""


class WeightError(GinvError):
    """A weight matrix is not Hermitian positive definite."""


class InternalInvariantError(GinvError):
    """A postcondition self-check failed; indicates a bug, not bad input."""


class PreconditionError(GinvError):
    """A documented operation precondition does not hold for the inputs."""


class FieldCapabilityError(GinvError):
    """The chosen field lacks a capability the operation requires."""


class UnsupportedStructureError(GinvError):
    """The input structure falls outside the cases the theory covers."""


class UsageError(GinvError):
    """The request itself is malformed (bad id, bad filter, bad arguments)."""


class ParseError(GinvError):
    """Malformed matrix or pattern text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
