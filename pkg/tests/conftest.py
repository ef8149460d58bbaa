import math

import numpy as np
import pytest

from hypercover import build


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)


def sample_admissible(rng, count, lo=3.0, hi=9.0, margin=1e-3):
    """Random real parameter triples satisfying all admissibility conditions."""
    out = []
    while len(out) < count:
        u, v, w = rng.uniform(lo, hi, size=3)
        B = math.sin(math.pi / u) ** 2 * math.sin(math.pi / w) ** 2 \
            - math.cos(math.pi / v) ** 2
        if B < -margin and 1 / u + 1 / v < 0.5 - margin \
                and 1 / w + 1 / v < 0.5 - margin:
            out.append((float(u), float(v), float(w)))
    return out


@pytest.fixture(scope="session")
def admissible_triples(rng):
    return sample_admissible(rng, 100)


@pytest.fixture(scope="session")
def o737():
    return build(7, 3, 7)


@pytest.fixture(scope="session")
def o373():
    return build(3, 7, 3)


@pytest.fixture(scope="session")
def o738():
    return build(7, 3, 8)
