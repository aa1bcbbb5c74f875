import itertools

import numpy as np
import pytest

from qcube.field import field_from_q


def brute_violation(q, n, d, mode, colors):
    """Oracle: least same-colored conflicting pair by scanning all pairs."""
    space = list(itertools.product(range(q), repeat=n))
    for a in range(len(space)):
        for b in range(a + 1, len(space)):
            dist = sum(x != y for x, y in zip(space[a], space[b]))
            hit = 1 <= dist <= d if mode == "atmost" else dist == d
            if hit and colors[a] == colors[b]:
                return (a, b, dist)
    return None


def desk_grid(qs=(2, 3, 4, 5), nmax=6, cap=1 << 12):
    for q in qs:
        for n in range(1, nmax + 1):
            if q ** n <= cap:
                yield q, n


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[2, 3, 4, 5])
def small_field(request):
    return field_from_q(request.param)
