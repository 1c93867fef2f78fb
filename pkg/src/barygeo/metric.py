"""Scalar products and distances computed from a squared-distance matrix.

For displacement vectors ``u_bar`` and ``v_bar`` (sum-zero weights over the
reference points) the scalar product of the encoded vectors is

    <u, v> = u_bar^T (-D / 2) v_bar

where ``D[i, j] = ||x_i - x_j||^2``. No coordinates are needed, and the value
does not depend on which of the (possibly many) displacement vectors is used.
Everything here works with squared quantities; in a pseudo-Euclidean space
they can be negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coords import Realization, as_displacement, as_normalized, displacement_between
from .errors import InvalidMatrixError, ShapeError
from .linalg import DEFAULT_TOL, as_matrix, as_vector, max_norm, quad_form


@dataclass(frozen=True, init=False)
class SquaredDistanceMatrix:
    """Symmetric, zero-diagonal matrix of squared (pseudo-)distances."""

    entries: np.ndarray

    def __init__(self, entries, tol: float = DEFAULT_TOL):
        D = as_matrix(entries, "squared-distance matrix")
        n = D.shape[0]
        if D.shape != (n, n):
            raise ShapeError(f"squared-distance matrix must be square, got {D.shape}")
        bound = tol * max(1.0, max_norm(D))
        asym = max_norm(D - D.T)
        if asym > bound:
            raise InvalidMatrixError(f"matrix is not symmetric (max |D - D^T| = {asym:.3g})")
        diag = max_norm(np.diag(D))
        if diag > bound:
            raise InvalidMatrixError(f"matrix has a nonzero diagonal (max |D_ii| = {diag:.3g})")
        D = D.copy()
        D.flags.writeable = False
        object.__setattr__(self, "entries", D)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def scale(self) -> float:
        return max_norm(self.entries)

    @classmethod
    def from_realization(cls, R: Realization) -> "SquaredDistanceMatrix":
        return cls(R.distance_matrix())


def as_sdm(D, tol: float = DEFAULT_TOL) -> SquaredDistanceMatrix:
    return D if isinstance(D, SquaredDistanceMatrix) else SquaredDistanceMatrix(D, tol)


@dataclass(frozen=True)
class TriangleEdges:
    """Edge lengths (not squared) of a triangle with vertices 1, 2, 3."""

    l12: float
    l13: float
    l23: float

    def __post_init__(self):
        for name in ("l12", "l13", "l23"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise ShapeError(f"edge length {name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    def squared_distance_matrix(self) -> SquaredDistanceMatrix:
        a, b, c = self.l12**2, self.l13**2, self.l23**2
        return SquaredDistanceMatrix([[0.0, a, b], [a, 0.0, c], [b, c, 0.0]])

    def satisfies_triangle_inequality(self, tol: float = DEFAULT_TOL) -> bool:
        a, b, c = sorted((self.l12, self.l13, self.l23))
        return c <= a + b + tol * max(1.0, c)


def _check_length(D: SquaredDistanceMatrix, *vectors) -> None:
    for v in vectors:
        if len(v) != D.n:
            raise ShapeError(f"weight vector has length {len(v)}, matrix has n = {D.n}")


def scalar_product(D, u_bar, v_bar, tol: float = DEFAULT_TOL) -> float:
    """Scalar product of the vectors encoded by two displacement vectors."""
    D = as_sdm(D, tol)
    u = as_displacement(u_bar, tol)
    v = as_displacement(v_bar, tol)
    _check_length(D, u, v)
    return -0.5 * quad_form(D.entries, u.weights, v.weights)


def squared_norm(D, u_bar, tol: float = DEFAULT_TOL) -> float:
    return scalar_product(D, u_bar, u_bar, tol)


def squared_distance(D, a, b, tol: float = DEFAULT_TOL) -> float:
    """Squared distance between two points given by normalized coordinates."""
    D = as_sdm(D, tol)
    a = as_normalized(a, tol)
    b = as_normalized(b, tol)
    _check_length(D, a, b)
    return squared_norm(D, displacement_between(a, b, tol), tol)


def _sum_one(w) -> np.ndarray:
    return as_normalized(w).weights


def lemma1_sides(R: Realization, lam, y) -> tuple[float, float]:
    """Both sides of the weighted parallel-axis identity.

    With ``c = sum(lam_i x_i)``::

        sum lam_i ||y - x_i||^2 == ||y - c||^2 + sum lam_i ||x_i - c||^2

    Negative weights are allowed as long as they sum to one.
    """
    lam = _sum_one(lam)
    y = as_vector(y, "y")
    if lam.size != R.n or y.size != R.dim:
        raise ShapeError("lambda or y does not match the realization")
    c = lam @ R.points
    lhs = sum(l * R.squared_norm(y - x) for l, x in zip(lam, R.points))
    variance = sum(l * R.squared_norm(x - c) for l, x in zip(lam, R.points))
    rhs = R.squared_norm(y - c) + variance
    return float(lhs), float(rhs)


def lemma2_sides(R: Realization, D, lam, nu) -> tuple[float, float]:
    """Both sides of the two-distribution decomposition of ``lam^T D nu``.

    The left side uses only the matrix; the right side is evaluated in ``R``
    as spread of ``lam`` + squared distance of the two barycenters + spread
    of ``nu``.
    """
    D = as_sdm(D)
    lam = _sum_one(lam)
    nu = _sum_one(nu)
    if lam.size != D.n or nu.size != D.n or R.n != D.n:
        raise ShapeError("lambda, nu, D and the realization must share n")
    lhs = quad_form(D.entries, lam, nu)
    c_lam = lam @ R.points
    c_nu = nu @ R.points
    spread_lam = sum(l * R.squared_norm(x - c_lam) for l, x in zip(lam, R.points))
    spread_nu = sum(v * R.squared_norm(c_nu - x) for v, x in zip(nu, R.points))
    rhs = spread_lam + R.squared_norm(c_lam - c_nu) + spread_nu
    return float(lhs), float(rhs)


def tri_squared_distance(edges: TriangleEdges, p, q, tol: float = DEFAULT_TOL) -> float:
    """Squared distance between two barycentric points of a triangle known
    only by its edge lengths. No planar layout is constructed."""
    if len(_as_len3(p)) != 3 or len(_as_len3(q)) != 3:
        raise ShapeError("triangle coordinates need exactly 3 weights")
    return squared_distance(edges.squared_distance_matrix(), p, q, tol)


def _as_len3(c):
    return c.weights if hasattr(c, "weights") else as_vector(c, "coordinates")
