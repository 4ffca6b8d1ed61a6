"""Exception hierarchy. Every domain failure raised by the package derives
from :class:`PruneError`; the CLI maps it to exit code 1."""


class PruneError(Exception):
    """Base class for all typed domain errors."""


# tensor_io
class FormatError(PruneError):
    """Binary array file is structurally malformed."""


class BadMagic(FormatError):
    pass


class MalformedHeader(FormatError):
    pass


class UnsupportedDtype(FormatError):
    pass


class FortranOrderUnsupported(FormatError):
    pass


class ShapeMismatch(FormatError):
    pass


class NonFiniteValue(FormatError):
    pass


class SchemaError(PruneError):
    pass


class DanglingReference(SchemaError):
    pass


class ShapeConflict(SchemaError):
    pass


# representatives / similarity
class ZeroMatrix(PruneError):
    pass


class NoConvergence(PruneError):
    pass


class DimensionMismatch(PruneError):
    pass


# scoring / selection
class InvalidRatio(PruneError):
    pass


class TooFewFilters(PruneError):
    pass


class TooLarge(PruneError):
    pass


# planner
class InvalidCounts(PruneError):
    pass


class EmptyLayer(PruneError):
    pass


class UnknownLayer(PruneError):
    pass


class NotPrunable(PruneError):
    pass
