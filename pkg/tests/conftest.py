import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from holder_resolvent import LpSpace, SamplerConfig

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[1.1, 1.5, 2.0, 3.0])
def space(request):
    return LpSpace(3, request.param)


@pytest.fixture
def small_sampler():
    return SamplerConfig(seed=7, count=2000)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
