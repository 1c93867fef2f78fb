"""Dense linear algebra primitives.

Matrices are plain ``numpy`` arrays. Every function copies its inputs and
returns fresh arrays, so callers never observe aliasing.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ShapeError

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order; eigenvectors are the matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def max_norm(a) -> float:
    """Largest absolute entry, 0 for empty input."""
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise ShapeError(f"{name} must be two-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError(f"{name} has non-finite entries")
    return m


def as_vector(v, name: str = "vector") -> np.ndarray:
    x = np.array(v, dtype=float)
    if x.ndim != 1:
        raise ShapeError(f"{name} must be one-dimensional, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ShapeError(f"{name} has non-finite entries")
    return x


def canonical_sign(v: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Flip ``v`` so that its first significant entry is positive."""
    scale = max_norm(v)
    for x in v:
        if abs(x) > tol * scale:
            return -v if x < 0 else v
    return v


def sym_eig(S, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    ``tol`` (relative to the max-norm of ``S``) bounds the accepted asymmetry.
    Rotations continue until the off-diagonal mass reaches rounding level.
    Eigenvectors are sign-normalized with :func:`canonical_sign`.
    """
    A = as_matrix(S, "S")
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError(f"sym_eig needs a square matrix, got shape {A.shape}")
    scale = max_norm(A)
    if max_norm(A - A.T) > tol * scale:
        raise ShapeError("sym_eig needs a symmetric matrix")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    eps = np.finfo(float).eps

    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= eps * max(np.linalg.norm(A), np.finfo(float).tiny):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # skip rotations that cannot change the diagonal at working precision
                if abs(apq) <= eps * 1e-3 * (abs(A[p, p]) + abs(A[q, q])):
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0

                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq

    values = np.diag(A).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    V = V[:, order]
    for k in range(n):
        V[:, k] = canonical_sign(V[:, k])
    return EigenDecomposition(values, V)


def quad_form(S, a, b) -> float:
    """Bilinear form ``a^T S b`` as an explicit sum of products."""
    S = as_matrix(S, "S")
    a = as_vector(a, "a")
    b = as_vector(b, "b")
    if S.shape != (a.size, b.size):
        raise ShapeError(f"quad_form shapes disagree: S {S.shape}, a {a.size}, b {b.size}")
    return float(np.sum(a[:, None] * S * b[None, :]))


def nullspace(A, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of ``{w : ||A w||_inf <= tol * ||A||_max}``.

    Empty when ``A`` has full column rank. A one-dimensional kernel is
    returned sign-normalized.
    """
    A = as_matrix(A, "A")
    rows, cols = A.shape
    if cols == 0:
        return []
    if rows == 0:
        return [e for e in np.eye(cols)]
    _, sing, vt = np.linalg.svd(A, full_matrices=True)
    sing = np.concatenate([sing, np.zeros(cols - sing.size)])
    cutoff = tol * max_norm(A)
    basis = [vt[k].copy() for k in range(cols) if sing[k] <= cutoff]
    if len(basis) == 1:
        basis = [canonical_sign(basis[0])]
    return basis


def solve_least_squares(A, b) -> tuple[np.ndarray, float]:
    """Minimum-norm minimizer of ``||A x - b||_2`` and its residual norm."""
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    if A.shape[0] != b.size:
        raise ShapeError(f"A has {A.shape[0]} rows but b has {b.size} entries")
    if A.shape[1] == 0:
        return np.zeros(0), float(np.linalg.norm(b))
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.linalg.norm(A @ x - b))
    return x, residual
