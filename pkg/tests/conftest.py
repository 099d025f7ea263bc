import os
import random
import warnings

import pytest
from hypothesis import HealthCheck, settings

from arrkit import Arrangement, boolean, weyl_arrangement

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def triangle_restriction() -> Arrangement:
    """y (x-y) (x^2-z^2) (y^2-z^2)."""
    return Arrangement.from_normals(
        [(0, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)])


@pytest.fixture
def tri():
    return triangle_restriction()


@pytest.fixture
def b3():
    return boolean(3)


@pytest.fixture(scope="session")
def d4():
    return weyl_arrangement("D", 4)


def random_arrangement(rng: random.Random, max_dim: int = 4, max_size: int = 10, entries=2) -> Arrangement:
    dim = rng.randint(2, max_dim)
    size = rng.randint(1, max_size)
    normals = []
    while len(normals) < size:
        v = [rng.randint(-entries, entries) for _ in range(dim)]
        if any(v):
            normals.append(v)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return Arrangement.from_normals(normals, dim=dim)


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
