import random
from fractions import Fraction

import pytest

from tchull.geometry import HighwayConfig

SPEEDS = (Fraction(3, 2), Fraction(2), Fraction(5), Fraction(100))


def all_configs():
    return [HighwayConfig.l1(v) for v in SPEEDS] + [HighwayConfig.l2inf()]


def rand_points(rng, n, den=4, top=1000):
    return [(Fraction(rng.randint(0, top * den), den), Fraction(rng.randint(0, top * den), den))
            for _ in range(n)]


def rand_config(rng):
    if rng.random() < 0.5:
        return HighwayConfig.l2inf()
    return HighwayConfig.l1(rng.choice(SPEEDS))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
