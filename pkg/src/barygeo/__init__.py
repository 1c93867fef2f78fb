"""Metric geometry on squared-distance matrices via barycentric coordinates."""

from .coords import (
    BarycentricCoords,
    DisplacementVector,
    Realization,
    configuration_nullspace,
    coords_of_point,
    displacement_between,
    normalize,
)
from .curvature import CurvatureReport, check_sturm, max_quadratic_on_simplex, sample_check
from .errors import (
    DegenerateCoordinatesError,
    GeometryError,
    InstanceTooLargeError,
    InvalidCoordinatesError,
    InvalidDisplacementError,
    InvalidMatrixError,
    ShapeError,
    UnrepresentablePointError,
)
from .linalg import EigenDecomposition, nullspace, quad_form, solve_least_squares, sym_eig
from .metric import (
    SquaredDistanceMatrix,
    TriangleEdges,
    lemma1_sides,
    lemma2_sides,
    scalar_product,
    squared_distance,
    squared_norm,
    tri_squared_distance,
)
from .spectral import (
    EmbeddabilityReport,
    GramMatrix,
    Signature,
    check_euclidean,
    distances_from_gram,
    gram_from_distances,
    realize,
    signature_of,
)

__version__ = "0.1.0"
