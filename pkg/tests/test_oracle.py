import random
from fractions import Fraction

import pytest

from conftest import SPEEDS
from tchull.geometry import HighwayConfig, time_distance
from tchull.oracle import oracle_clusters, oracle_time_distance


def test_grid_example():
    cfg = HighwayConfig.l1(2)
    assert oracle_time_distance((1, 1), (5, 1), cfg, Fraction(1, 100)) == pytest.approx(4)


def test_grid_never_below_closed_form():
    rng = random.Random(61)
    for _ in range(100):
        cfg = HighwayConfig.l2inf() if rng.random() < 0.5 else HighwayConfig.l1(rng.choice(SPEEDS))
        p = (rng.randint(0, 100), rng.randint(0, 100))
        q = (rng.randint(0, 100), rng.randint(0, 100))
        grid = oracle_time_distance(p, q, cfg, 0.5)
        exact = float(time_distance(p, q, cfg))
        assert grid >= exact - 1e-9
        assert grid - exact <= 2 * 0.5 + 1e-9


def test_bad_resolution():
    with pytest.raises(ValueError):
        oracle_time_distance((0, 0), (1, 1), HighwayConfig.l2inf(), 0)


def test_oracle_partition_examples():
    cfg = HighwayConfig.l1(2)
    assert oracle_clusters([(1, 1), (5, 1)], cfg).as_sets() == {frozenset([0, 1])}
    assert oracle_clusters([(1, 1), (9, 1)], cfg).as_sets() == {frozenset([0]), frozenset([1])}
