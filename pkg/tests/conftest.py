import numpy as np
import pytest

from nkcp3.ambient import SpherePoint, norm, random_ambient


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def sphere_point(seed: int) -> SpherePoint:
    r = np.random.default_rng(seed)
    v = random_ambient(r)
    return SpherePoint(v / norm(v))


@pytest.fixture
def base_point():
    return sphere_point(7)
