"""Sturm non-negative curvature test for finite metric spaces.

A squared-distance matrix ``D`` passes when ``lam^T D lam <= 0`` for every
sum-zero ``lam`` with exactly one negative entry. Fixing the negative vertex
``i`` and writing ``lam = B_i mu`` with ``mu >= 0`` (``lam_i = -sum(mu)``)
turns each vertex condition into copositivity of ``-B_i^T D B_i``. By
homogeneity this is decided by maximizing ``mu^T M_i mu`` over the standard
simplex, which :func:`max_quadratic_on_simplex` does exactly by face
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import InstanceTooLargeError, ShapeError
from .linalg import DEFAULT_TOL, as_matrix, max_norm, quad_form
from .metric import as_sdm

N_MAX = 12


@dataclass(frozen=True)
class CurvatureReport:
    """Result of a Sturm curvature check.

    ``exact`` is false for sampling reports; those can refute the condition
    but never prove it, so their success reads "no violation found".
    """

    satisfied: bool
    per_vertex: tuple[bool, ...]
    witness: Optional[np.ndarray] = None
    witness_value: Optional[float] = None
    vertex_maxima: tuple[float, ...] = field(default=())
    exact: bool = True

    @property
    def verdict(self) -> str:
        if not self.satisfied:
            return "violated"
        return "satisfied" if self.exact else "no violation found"


def max_quadratic_on_simplex(Q, tol: float = DEFAULT_TOL, max_dim: int = N_MAX - 1):
    """Exact maximum of ``mu^T Q mu`` over ``{mu >= 0, sum(mu) = 1}``.

    The maximizer lies in the relative interior of some face; there it is a
    stationary point of the restricted quadratic, i.e. ``Q_SS mu_S = eta 1``
    with ``sum(mu_S) = 1``. Every support set is tried. Faces whose
    stationarity system is singular add no candidate of their own: the
    quadratic is then flat along a line through any stationary point and the
    same value is attained on a smaller face.

    Returns ``(value, point)``.
    """
    Q = as_matrix(Q, "Q")
    k = Q.shape[0]
    if Q.shape != (k, k):
        raise ShapeError(f"Q must be square, got {Q.shape}")
    if k == 0:
        raise ShapeError("Q must have at least one row")
    if k > max_dim:
        raise InstanceTooLargeError(
            f"exact simplex maximization is limited to dimension {max_dim}, got {k}"
        )
    Q = 0.5 * (Q + Q.T)

    best = int(np.argmax(np.diag(Q)))
    best_value = float(Q[best, best])
    best_point = np.eye(k)[best]
    feas = 1e-12

    for size in range(2, k + 1):
        for support in combinations(range(k), size):
            idx = list(support)
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = Q[np.ix_(idx, idx)]
            kkt[:size, size] = -1.0
            kkt[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                continue
            mu_s = sol[:size]
            if not np.all(np.isfinite(mu_s)) or np.any(mu_s < -feas):
                continue
            mu_s[mu_s < feas] = 0.0
            total = mu_s.sum()
            if total <= 0:
                continue
            mu = np.zeros(k)
            mu[idx] = mu_s / total
            # evaluate at the actual feasible point so no candidate overstates the max
            value = float(mu @ Q @ mu)
            if value > best_value:
                best_value, best_point = value, mu
    return best_value, best_point


def _vertex_map(n: int, i: int) -> np.ndarray:
    """Columns map simplex weights on the other vertices to a cone vector."""
    B = np.zeros((n, n - 1))
    others = [j for j in range(n) if j != i]
    B[others, range(n - 1)] = 1.0
    B[i, :] = -1.0
    return B


def _cone_vector(n: int, i: int, mu: np.ndarray) -> np.ndarray:
    """``B_i mu`` scaled so the negative entry equals minus the support size."""
    lam = np.zeros(n)
    others = [j for j in range(n) if j != i]
    lam[others] = mu
    support = int(np.count_nonzero(lam))
    lam *= support / lam.sum()
    lam[i] = -lam.sum()
    return lam


def _threshold(D, tol: float) -> float:
    return tol * max_norm(D.entries)


def check_sturm(D, tol: float = DEFAULT_TOL, n_max: int = N_MAX) -> CurvatureReport:
    """Exact Sturm curvature check by copositivity over every vertex cone."""
    D = as_sdm(D, tol)
    n = D.n
    if n > n_max:
        raise InstanceTooLargeError(
            f"exact Sturm check is limited to n <= {n_max} points (got {n}); "
            "use sample_check for larger instances"
        )
    tau = _threshold(D, tol)
    if n < 2:
        return CurvatureReport(True, (True,) * n, vertex_maxima=(0.0,) * n)

    maxima, passes, points = [], [], []
    for i in range(n):
        B = _vertex_map(n, i)
        value, mu = max_quadratic_on_simplex(B.T @ D.entries @ B, tol, max_dim=n - 1)
        maxima.append(value)
        passes.append(value <= tau)
        points.append(mu)

    if all(passes):
        return CurvatureReport(True, tuple(passes), vertex_maxima=tuple(maxima))
    worst = int(np.argmax(maxima))
    lam = _cone_vector(n, worst, points[worst])
    return CurvatureReport(
        False,
        tuple(passes),
        witness=lam,
        witness_value=quad_form(D.entries, lam, lam),
        vertex_maxima=tuple(maxima),
    )


def sample_check(
    D,
    samples: int = 10_000,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    batch: int = 8192,
) -> CurvatureReport:
    """Monte Carlo search for a Sturm violation.

    Draws a random vertex, a random face of the opposite simplex and a
    uniform point on it. Finding a value above ``tol * max|D|`` refutes the
    condition; finding none proves nothing.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    D = as_sdm(D, tol)
    n = D.n
    tau = _threshold(D, tol)
    if n < 2:
        return CurvatureReport(True, (True,) * n, exact=False)

    rng = np.random.default_rng(seed)
    best = np.full(n, -np.inf)
    best_lam = [None] * n
    remaining = samples
    while remaining > 0:
        m = min(batch, remaining)
        remaining -= m
        vertex = rng.integers(0, n, size=m)
        mu = rng.exponential(size=(m, n))
        # half the draws live on a random lower-dimensional face
        on_face = rng.random(m) < 0.5
        mu[on_face] *= rng.random((int(on_face.sum()), n)) < 0.5
        mu[np.arange(m), vertex] = 0.0
        empty = mu.sum(axis=1) == 0
        fallback = (vertex[empty] + 1) % n
        mu[empty, fallback] = 1.0
        mu /= mu.sum(axis=1, keepdims=True)
        lam = mu.copy()
        lam[np.arange(m), vertex] = -1.0
        values = np.einsum("si,ij,sj->s", lam, D.entries, lam)
        for i in range(n):
            rows = np.flatnonzero(vertex == i)
            if rows.size:
                r = rows[np.argmax(values[rows])]
                if values[r] > best[i]:
                    best[i] = values[r]
                    best_lam[i] = lam[r].copy()

    passes = tuple(bool(not (b > tau)) for b in best)
    maxima = tuple(float(b) if np.isfinite(b) else None for b in best)
    if all(passes):
        return CurvatureReport(True, passes, vertex_maxima=maxima, exact=False)
    worst = int(np.argmax(best))
    others = np.delete(best_lam[worst], worst)
    lam = _cone_vector(n, worst, others)
    return CurvatureReport(
        False,
        passes,
        witness=lam,
        witness_value=quad_form(D.entries, lam, lam),
        vertex_maxima=maxima,
        exact=False,
    )
