import random
from fractions import Fraction

import pytest

from mginv.bounds import SearchConfig, random_pm_graph


def random_lengths(rng: random.Random, k: int, den: int = 30):
    return tuple(Fraction(rng.randint(1, den), den) for _ in range(k))


def random_simple_bridgeless(rng: random.Random, vmax=8, emax=14):
    cfg = SearchConfig(simple_only=True, vertices=(3, vmax), edges=(4, emax),
                       genus=(2, 6), max_q=0)
    return random_pm_graph(rng, cfg)


@pytest.fixture
def rng():
    return random.Random(20240817)
