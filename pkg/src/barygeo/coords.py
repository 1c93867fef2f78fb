"""Generalized barycentric coordinates, displacement vectors and realizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import (
    DegenerateCoordinatesError,
    InvalidCoordinatesError,
    InvalidDisplacementError,
    ShapeError,
    UnrepresentablePointError,
)
from .linalg import DEFAULT_TOL, as_matrix, as_vector, max_norm, nullspace, solve_least_squares

Kind = Literal["normalized", "non_normalized"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _sum_scale(w: np.ndarray) -> float:
    return max(1.0, max_norm(w))


@dataclass(frozen=True)
class BarycentricCoords:
    """Weights over the reference points.

    ``normalized`` weights sum to one and give the point directly;
    ``non_normalized`` weights have a nonzero sum and give the point after
    division by it.
    """

    weights: np.ndarray
    kind: Kind = "normalized"
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        w = as_vector(self.weights, "weights")
        total = float(np.sum(w))
        bound = self.tol * _sum_scale(w)
        if self.kind == "normalized":
            if abs(total - 1.0) > bound:
                raise InvalidCoordinatesError(
                    f"normalized coordinates must sum to 1, got sum {total!r}"
                )
        elif self.kind == "non_normalized":
            if abs(total) <= bound:
                raise DegenerateCoordinatesError(
                    f"coordinate weights sum to {total!r}; a nonzero sum is required"
                )
        else:
            raise ValueError(f"unknown coordinate kind {self.kind!r}")
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return self.weights.size

    @classmethod
    def vertex(cls, i: int, n: int) -> "BarycentricCoords":
        return cls(np.eye(n)[i])

    @classmethod
    def centroid(cls, n: int) -> "BarycentricCoords":
        return cls(np.full(n, 1.0 / n))


@dataclass(frozen=True)
class DisplacementVector:
    """Sum-zero weights encoding a vector as a difference of two points."""

    weights: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        w = as_vector(self.weights, "weights")
        total = float(np.sum(w))
        if abs(total) > self.tol * _sum_scale(w):
            raise InvalidDisplacementError(
                f"displacement weights must sum to 0, got sum {total!r}"
            )
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return self.weights.size

    def __add__(self, other: "DisplacementVector") -> "DisplacementVector":
        return DisplacementVector(self.weights + _weights(other))

    def __mul__(self, c: float) -> "DisplacementVector":
        return DisplacementVector(self.weights * c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Realization:
    """Explicit points in a (pseudo-)Euclidean space with a diagonal +-1 metric.

    ``points`` has shape ``(n, m)``; ``signature`` holds ``m`` entries of +1
    or -1. The affine rank of the points is computed on construction.
    """

    points: np.ndarray
    signature: np.ndarray = None
    rank: int = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        pts = as_matrix(pts, "points")
        m = pts.shape[1]
        sig = np.ones(m) if self.signature is None else as_vector(self.signature, "signature")
        if sig.size != m:
            raise ShapeError(f"signature has {sig.size} entries for dimension {m}")
        if not np.all(np.isin(sig, (-1.0, 1.0))):
            raise ShapeError("signature entries must be +1 or -1")
        object.__setattr__(self, "points", _frozen(pts))
        object.__setattr__(self, "signature", _frozen(sig))
        object.__setattr__(self, "rank", _affine_rank(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def inner(self, u, v) -> float:
        """Signature-weighted scalar product of two ambient vectors."""
        u = as_vector(u, "u")
        v = as_vector(v, "v")
        if u.size != self.dim or v.size != self.dim:
            raise ShapeError(f"vectors must have dimension {self.dim}")
        return float(np.sum(self.signature * u * v))

    def squared_norm(self, u) -> float:
        return self.inner(u, u)

    def point(self, coords) -> np.ndarray:
        """Ambient point with the given (possibly non-normalized) coordinates."""
        w = _weights(coords)
        if w.size != self.n:
            raise ShapeError(f"expected {self.n} weights, got {w.size}")
        return (w @ self.points) / np.sum(w)

    def vector(self, displacement) -> np.ndarray:
        """Ambient vector encoded by a displacement vector."""
        w = _weights(displacement)
        if w.size != self.n:
            raise ShapeError(f"expected {self.n} weights, got {w.size}")
        return w @ self.points

    def distance_matrix(self) -> np.ndarray:
        """Signed squared distances ``||x_i - x_j||^2`` in this metric."""
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.einsum("ijk,k,ijk->ij", diff, self.signature, diff)


def _affine_rank(points: np.ndarray) -> int:
    if points.shape[0] < 2 or points.shape[1] == 0:
        return 0
    diffs = points[1:] - points[0]
    scale = max(1.0, max_norm(points))
    s = np.linalg.svd(diffs, compute_uv=False)
    return int(np.sum(s > DEFAULT_TOL * scale * max(diffs.shape)))


def _weights(c) -> np.ndarray:
    if isinstance(c, (BarycentricCoords, DisplacementVector)):
        return c.weights
    return as_vector(c, "weights")


def as_normalized(c, tol: float = DEFAULT_TOL) -> BarycentricCoords:
    """Coerce arrays to normalized coordinates; normalize non-normalized ones."""
    if isinstance(c, BarycentricCoords):
        return c if c.kind == "normalized" else normalize(c, tol)
    return BarycentricCoords(_weights(c), "normalized", tol)


def as_displacement(v, tol: float = DEFAULT_TOL) -> DisplacementVector:
    if isinstance(v, DisplacementVector):
        return v
    return DisplacementVector(_weights(v), tol)


def normalize(c, tol: float = DEFAULT_TOL) -> BarycentricCoords:
    """Divide weights by their sum.

    >>> normalize([2.0, 2.0]).weights
    array([0.5, 0.5])
    """
    w = _weights(c)
    total = float(np.sum(w))
    if abs(total) <= tol * _sum_scale(w):
        raise DegenerateCoordinatesError(
            f"coordinate weights sum to {total!r}; cannot normalize"
        )
    return BarycentricCoords(w / total, "normalized", tol)


def displacement_between(a, b, tol: float = DEFAULT_TOL) -> DisplacementVector:
    """Displacement from point ``a`` to point ``b`` (both normalized)."""
    a = as_normalized(a, tol).weights
    b = as_normalized(b, tol).weights
    if a.size != b.size:
        raise ShapeError(f"coordinate lengths differ: {a.size} vs {b.size}")
    return DisplacementVector(b - a, tol)


def _augmented(R: Realization) -> np.ndarray:
    return np.vstack([R.points.T, np.ones((1, R.n))])


def coords_of_point(R: Realization, y, tol: float = DEFAULT_TOL) -> BarycentricCoords:
    """Minimum-norm normalized coordinates of ``y`` with respect to ``R``.

    Solves the system formed by the point coordinates stacked over a row of
    ones. Raises :class:`UnrepresentablePointError` when ``y`` is off the
    affine span.
    """
    y = as_vector(y, "y")
    if y.size != R.dim:
        raise ShapeError(f"point has dimension {y.size}, realization has {R.dim}")
    w, residual = solve_least_squares(_augmented(R), np.append(y, 1.0))
    scale = max(1.0, max_norm(R.points), max_norm(y))
    if residual > tol * scale * max(1, R.n):
        raise UnrepresentablePointError(
            f"point is outside the affine span of the reference points (residual {residual:.3g})"
        )
    # the solve only fixes the sum to rounding; snap it so validation is exact
    w = w / np.sum(w)
    return BarycentricCoords(w, "normalized", tol)


def configuration_nullspace(R: Realization, tol: float = DEFAULT_TOL) -> list[DisplacementVector]:
    """Basis of weights ``w`` with ``sum(w) = 0`` and ``sum(w_i x_i) = 0``.

    These are the displacement vectors of the zero vector; the basis is empty
    exactly when the reference points are affinely independent.
    """
    return [DisplacementVector(w, tol) for w in nullspace(_augmented(R), tol)]
