import numpy as np
import pytest

from hypalg.fixtures import known_idempotents, load_fixture
from hypalg.spectral import SpectralConfig, find_idempotent_system

SPLIT_FIXTURES = ("bicomplex", "efg", "hyperbolic")


@pytest.fixture(scope="session")
def bicomplex():
    return load_fixture("bicomplex")


@pytest.fixture(scope="session")
def efg():
    return load_fixture("efg")


@pytest.fixture(scope="session")
def bicomplex_system():
    return known_idempotents("bicomplex")


@pytest.fixture(scope="session")
def efg_system():
    return known_idempotents("efg")


@pytest.fixture(params=SPLIT_FIXTURES, scope="session")
def split_algebra(request):
    """(table, discovered system) for each algebra that splits over its field."""
    table = load_fixture(request.param)
    return table, find_idempotent_system(table, SpectralConfig(seed=7))


@pytest.fixture
def rng():
    return np.random.default_rng(20061102)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
