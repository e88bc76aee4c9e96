import numpy as np
import pytest

import volopt as v
from volopt import alpha


def build(simplices, ambient_dim=2, coords=None, weights=None):
    return v.canonical_sort(simplices, ambient_dim, coords, weights)


@pytest.fixture
def filled_triangle():
    """v1 v2 v3 e12 e13 e23 t123 with indices 1..7."""
    return build([
        ((1,), 0), ((2,), 0), ((3,), 0),
        ((1, 2), 1), ((1, 3), 1), ((2, 3), 1),
        ((1, 2, 3), 2),
    ])


@pytest.fixture
def hollow_square():
    """Four vertices, four edges; one essential loop born at index 8."""
    return build([
        ((1,), 0), ((2,), 0), ((3,), 0), ((4,), 0),
        ((1, 2), 1), ((1, 4), 1), ((2, 3), 1), ((3, 4), 1),
    ])


@pytest.fixture
def square_with_diagonal():
    coords = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0)}
    return build([
        ((0,), 0), ((1,), 0), ((2,), 0), ((3,), 0),
        ((0, 1), 1), ((1, 2), 1), ((2, 3), 1), ((0, 3), 1),
        ((0, 2), 2),
        ((0, 1, 2), 3),
        ((0, 2, 3), 4),
    ], coords=coords)


@pytest.fixture
def two_window_filtration():
    """Pentagon outline split by one chord into a 4-edge left loop (fills at
    value 4) and a 3-edge right loop (fills at value 5).

    The value-level degree-1 diagram is {(2, 5), (3, 4)} plus a zero pair.
    The pair born at 3 has a 3-edge shortest representative but a 4-edge
    volume boundary, so its optimal cycle and volume optimal cycle differ.
    """
    coords = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (2.0, 0.5), 3: (0.0, 1.0), 4: (1.0, 1.0)}
    return build([
        ((0,), 0), ((1,), 0), ((2,), 0), ((3,), 0), ((4,), 0),
        ((0, 1), 1), ((1, 2), 1), ((2, 4), 1), ((3, 4), 1),
        ((0, 3), 2),
        ((1, 4), 3),
        ((0, 4), 4), ((0, 1, 4), 4), ((0, 3, 4), 4),
        ((1, 2, 4), 5),
    ], coords=coords)


@pytest.fixture
def two_volume_filtration():
    """Square loop (born 2) killable by two different four-face membranes
    that share their last two faces; both are optimal with equal objective."""
    coords = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0), 4: (0.5, 0.5)}
    return build([
        ((0,), 1), ((1,), 1), ((2,), 1), ((3,), 1), ((4,), 1),
        ((0, 1), 2), ((1, 2), 2), ((2, 3), 2), ((0, 3), 2),
        ((0, 2), 3), ((0, 4), 3), ((1, 4), 3), ((2, 4), 3), ((3, 4), 3),
        ((0, 1, 2), 4), ((0, 1, 4), 4), ((1, 2, 4), 4),
        ((0, 2, 4), 5), ((2, 3, 4), 5),
        ((0, 3, 4), 6),
    ], coords=coords)


# A projective-plane triangulation with a capped generator loop, ordered so
# that one pair's unconstrained volume problem returns a half-integer chain
# whose boundary misses the birth simplex entirely.  Found by search; the
# exact orders below are load-bearing.
RETRY_EDGE_ORDER = [
    (2, 5), (2, 6), (1, 7), (1, 3), (4, 6), (2, 3), (1, 6), (5, 7), (3, 4),
    (3, 5), (1, 4), (4, 5), (1, 5), (4, 7), (1, 2), (5, 6), (3, 6), (2, 4),
]
RETRY_FACE_ORDER = [
    (2, 3, 6), (4, 5, 7), (3, 4, 5), (1, 5, 6), (1, 2, 5), (1, 4, 7),
    (4, 5, 6), (2, 3, 5), (1, 3, 4), (2, 4, 6), (1, 2, 4), (1, 5, 7), (1, 3, 6),
]
RETRY_PAIR = (16, 37)  # (3,4)-edge birth, (1,5,7)-face death


@pytest.fixture
def epsilon_retry_filtration():
    simps = [((x,), 0.0) for x in range(1, 8)]
    simps += [(e, 1.0 + i) for i, e in enumerate(RETRY_EDGE_ORDER)]
    simps += [(t, 60.0 + i) for i, t in enumerate(RETRY_FACE_ORDER)]
    return build(simps)


def random_alpha_2d(seed: int, lo=10, hi=60):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(lo, hi + 1))
    pc = alpha.PointCloud(rng.uniform(0.0, 1.0, size=(n, 2)))
    return alpha.build_alpha_filtration(pc)


def random_alpha_3d(seed: int, lo=8, hi=30):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(lo, hi + 1))
    pc = alpha.PointCloud(rng.uniform(0.0, 1.0, size=(n, 3)))
    return alpha.build_alpha_filtration(pc)
