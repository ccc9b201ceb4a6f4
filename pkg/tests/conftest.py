import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from ncomplex import PresentedGroup, make_sequence, validate_ncomplex
from ncomplex.cli import fixture_path
from ncomplex.io import read_complex

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

INTERIOR = range(2, 5)  # interior of the [0, 6] fixtures for (2,2) and (2,1)


@pytest.fixture
def z8():
    return read_complex(fixture_path("z8_times2.json"))


@pytest.fixture
def z2():
    return read_complex(fixture_path("z2_zero.json"))


def cyclic_chain(m, c, lo, hi, n=None):
    """Z/m at every position of [lo, hi] with d = multiplication by c."""
    G = PresentedGroup.cyclic(m)
    C = make_sequence((lo, hi), [G] * (hi - lo + 1), [[[c]]] * (hi - lo))
    return validate_ncomplex(C, n) if n else C


def rng_for(seed):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
