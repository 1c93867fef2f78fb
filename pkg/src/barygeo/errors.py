"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class GeometryError(Exception):
    """Base class for all barygeo errors."""

    exit_code = 1


class ShapeError(GeometryError, ValueError):
    """Operands have incompatible or invalid shapes."""

    exit_code = 2


class InvalidInputError(GeometryError, ValueError):
    """Input data violates a required invariant (symmetry, zero diagonal, ...)."""

    exit_code = 3


class DegenerateCoordinatesError(InvalidInputError):
    """Barycentric weights sum to zero, so they encode no point."""


class InvalidCoordinatesError(InvalidInputError):
    """Weights claimed to be normalized do not sum to one."""


class InvalidDisplacementError(InvalidInputError):
    """A displacement vector does not sum to zero."""


class InvalidMatrixError(InvalidInputError):
    """A squared-distance matrix is asymmetric or has a nonzero diagonal."""


class ParseError(GeometryError, ValueError):
    """Malformed input text (numbers, lists, CSV tables)."""

    exit_code = 2


class RefusalError(GeometryError, ValueError):
    """The request is well-formed but has no mathematical answer."""

    exit_code = 4


class UnrepresentablePointError(RefusalError):
    """A point lies outside the affine span of the reference points."""


class InstanceTooLargeError(GeometryError, ValueError):
    """Problem size exceeds the limit of an exact (exponential) algorithm."""

    exit_code = 5
