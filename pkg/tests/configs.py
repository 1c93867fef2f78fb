"""Random configurations shared by the test modules."""

import numpy as np

from barygeo import Realization


def euclidean(rng, n, m, box=10.0):
    return Realization(rng.uniform(-box, box, size=(n, m)))


def pseudo(rng, n, n_pos, n_neg, box=10.0):
    sig = np.array([1.0] * n_pos + [-1.0] * n_neg)
    return Realization(rng.uniform(-box, box, size=(n, n_pos + n_neg)), sig)


def sum_one(rng, n, spread=1.0):
    """Sum-one weights with entries of both signs."""
    w = rng.normal(scale=spread, size=n)
    return w - w.mean() + 1.0 / n


def sum_zero(rng, n):
    return sum_one(rng, n) - sum_one(rng, n)


def random_symmetric(rng, n, box=10.0):
    """Arbitrary symmetric zero-diagonal matrix (usually not Euclidean)."""
    A = rng.uniform(-box, box, size=(n, n))
    D = A + A.T
    np.fill_diagonal(D, 0.0)
    return D


def tree_metric_squared(rng, n):
    """Squared path lengths of a random weighted tree on n vertices."""
    parent = [None] + [int(rng.integers(0, k)) for k in range(1, n)]
    weight = rng.uniform(0.5, 3.0, size=n)
    depth_path = []
    for v in range(n):
        path, u = {}, v
        dist = 0.0
        while u is not None:
            path[u] = dist
            if parent[u] is not None:
                dist += weight[u]
            u = parent[u]
        depth_path.append(path)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            common = [a for a in depth_path[i] if a in depth_path[j]]
            lca = min(common, key=lambda a: depth_path[i][a])
            D[i, j] = (depth_path[i][lca] + depth_path[j][lca]) ** 2
    return D


def direct_inner(R, u_bar, v_bar):
    """Oracle: scalar product of the ambient vectors the weights encode."""
    return R.inner(R.vector(u_bar), R.vector(v_bar))
