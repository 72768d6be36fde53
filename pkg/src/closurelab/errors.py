"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (malformed input,
CLI exit code 2) and :class:`PreconditionError` (well-formed input that
violates an operation's precondition, CLI exit code 3).
"""


class ClosureLabError(Exception):
    """Base class for every error raised by closurelab."""

    code = "error"


class ValidationError(ClosureLabError, ValueError):
    code = "validation"


class PreconditionError(ClosureLabError, ValueError):
    code = "precondition"


class ZeroVector(PreconditionError):
    code = "zero-vector"


class EmptyPolyhedron(PreconditionError):
    code = "empty-polyhedron"


class NotInterior(PreconditionError):
    code = "not-interior"


class RecessionNotLinear(PreconditionError):
    code = "recession-not-linear"


class OriginNotInterior(PreconditionError):
    code = "origin-not-interior"


class FullSpace(PreconditionError):
    code = "full-space"


class NotLineFree(PreconditionError):
    code = "not-line-free"


class NotFullDimensional(PreconditionError):
    code = "not-full-dimensional"


class Unbounded(PreconditionError):
    code = "unbounded"


class UnboundedDirection(PreconditionError):
    code = "unbounded-direction"


class NonPreservingReducer(PreconditionError):
    code = "non-preserving-reducer"


class PreservingReducer(PreconditionError):
    code = "preserving-reducer"


class DimensionNot2(PreconditionError):
    code = "dimension-not-2"


class ShapeMismatch(PreconditionError):
    code = "shape-mismatch"


class EmptyFamily(PreconditionError):
    code = "empty-family"


class ReferenceNotContained(PreconditionError):
    code = "reference-not-contained"


class NotPrimitive(PreconditionError):
    code = "not-primitive"


class NotUnimodular(PreconditionError):
    code = "not-unimodular"


class Undecidable(PreconditionError):
    code = "undecidable"


class PreconditionViolated(PreconditionError):
    code = "precondition-violated"


class DimensionLimitExceeded(PreconditionError):
    code = "dimension-limit"
