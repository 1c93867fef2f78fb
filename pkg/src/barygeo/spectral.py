"""Double centering, classical MDS realization and Euclidean embeddability."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .coords import Realization
from .errors import ShapeError
from .linalg import DEFAULT_TOL, as_matrix, max_norm, quad_form, sym_eig
from .metric import SquaredDistanceMatrix, as_sdm


class Signature(NamedTuple):
    n_pos: int
    n_neg: int
    n_zero: int


@dataclass(frozen=True, init=False)
class GramMatrix:
    """Gram matrix of the points taken relative to their centroid."""

    entries: np.ndarray

    def __init__(self, entries, tol: float = DEFAULT_TOL):
        G = as_matrix(entries, "Gram matrix")
        if G.shape[0] != G.shape[1]:
            raise ShapeError(f"Gram matrix must be square, got {G.shape}")
        bound = tol * max(1.0, max_norm(G)) * max(1, G.shape[0])
        if max_norm(G.sum(axis=0)) > bound or max_norm(G.sum(axis=1)) > bound:
            raise ShapeError("Gram matrix is not centered (row/column sums are nonzero)")
        G = G.copy()
        G.flags.writeable = False
        object.__setattr__(self, "entries", G)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EmbeddabilityReport:
    """Outcome of the negative-type test.

    When ``embeddable`` is false, ``witness`` is a sum-zero vector whose form
    value ``witness^T D witness`` is positive; it can be checked with nothing
    but the matrix.
    """

    embeddable: bool
    signature: Signature
    witness: Optional[np.ndarray] = None
    witness_value: Optional[float] = None


def centering_matrix(n: int) -> np.ndarray:
    return np.eye(n) - np.full((n, n), 1.0 / n)


def gram_from_distances(D) -> GramMatrix:
    """``(I - J/n) (-D/2) (I - J/n)`` with ``J`` the all-ones matrix."""
    D = as_sdm(D)
    H = centering_matrix(D.n)
    G = H @ (-0.5 * D.entries) @ H
    return GramMatrix(0.5 * (G + G.T))


def distances_from_gram(G) -> SquaredDistanceMatrix:
    """Inverse of :func:`gram_from_distances`: ``D_ij = G_ii + G_jj - 2 G_ij``."""
    G = G.entries if isinstance(G, GramMatrix) else as_matrix(G, "G")
    d = np.diag(G)
    D = d[:, None] + d[None, :] - 2.0 * G
    np.fill_diagonal(D, 0.0)
    return SquaredDistanceMatrix(0.5 * (D + D.T))


def _spectrum(D, tol: float):
    G = gram_from_distances(D).entries
    eig = sym_eig(G, tol)
    tau = tol * max(1.0, max_norm(G))
    return eig, tau


def _count(values: np.ndarray, tau: float) -> Signature:
    n_pos = int(np.sum(values > tau))
    n_neg = int(np.sum(values < -tau))
    return Signature(n_pos, n_neg, values.size - n_pos - n_neg)


def signature_of(D, tol: float = DEFAULT_TOL) -> Signature:
    """Inertia of the centered Gram matrix.

    The all-ones direction is always in the kernel, so ``n_zero >= 1`` for
    any nonempty matrix.
    """
    eig, tau = _spectrum(as_sdm(D, tol), tol)
    return _count(eig.eigenvalues, tau)


def check_euclidean(D, tol: float = DEFAULT_TOL) -> EmbeddabilityReport:
    """Decide whether ``D`` is a matrix of squared Euclidean distances.

    ``D`` embeds iff ``lam^T D lam <= 0`` for every sum-zero ``lam``, which is
    the same as the centered Gram matrix having no negative eigenvalue. On
    failure the eigenvector of the most negative eigenvalue, centered and
    scaled to unit max-norm, is returned as witness.
    """
    D = as_sdm(D, tol)
    eig, tau = _spectrum(D, tol)
    signature = _count(eig.eigenvalues, tau)
    if signature.n_neg == 0:
        return EmbeddabilityReport(True, signature)

    lam = eig.eigenvectors[:, -1].copy()
    lam -= lam.mean()
    lam /= max_norm(lam)
    # lam is orthogonal to the kernel, so value = 2|eigenvalue| ||lam||^2 > 2 tau
    value = quad_form(D.entries, lam, lam)
    return EmbeddabilityReport(False, signature, lam, value)


def realize(D, tol: float = DEFAULT_TOL) -> Realization:
    """Classical MDS into a pseudo-Euclidean space.

    Each eigenvalue of the centered Gram matrix with ``|value| > tau`` gives
    one axis, scaled by ``sqrt(|value|)`` and carrying the sign of the value
    in the signature. Zero directions are dropped, so the dimension equals
    the numerical rank.
    """
    D = as_sdm(D, tol)
    eig, tau = _spectrum(D, tol)
    keep = np.abs(eig.eigenvalues) > tau
    values = eig.eigenvalues[keep]
    points = eig.eigenvectors[:, keep] * np.sqrt(np.abs(values))
    return Realization(points.reshape(D.n, int(keep.sum())), np.sign(values))
