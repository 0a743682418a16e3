import numpy as np
import pytest

from minplus_apsp import INF, DistMatrix

P3_ROWS = [[0, 1, INF], [1, 0, 1], [INF, 1, 0]]
P3_SOLVED = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


@pytest.fixture
def p3():
    """Path graph 0-1-2 in distance form."""
    return DistMatrix.from_rows(P3_ROWS)


def minplus_square(m: DistMatrix) -> DistMatrix:
    """Direct min-plus product oracle, straight from the definition."""
    a = m.data
    c = np.min(a[:, :, None] + a[None, :, :], axis=1)
    return DistMatrix(c)


def random_dist_matrix(rng, n, *, max_weight=4, density=0.3, directed=False) -> DistMatrix:
    a = np.full((n, n), INF)
    np.fill_diagonal(a, 0.0)
    mask = rng.random((n, n)) < density
    np.fill_diagonal(mask, False)
    weights = rng.integers(1, max_weight + 1, size=(n, n)).astype(np.float64)
    a[mask] = weights[mask]
    if not directed:
        a = np.minimum(a, a.T)
    return DistMatrix(a)
