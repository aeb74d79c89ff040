import numpy as np
import pytest
from hypothesis import settings

from starloop.disk import DiskQuadrature
from starloop.jets import BumpProfile

settings.register_profile("default", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("default")


@pytest.fixture(scope="session")
def quad():
    return DiskQuadrature()


@pytest.fixture(scope="session")
def profile():
    return BumpProfile(0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_matrix(rng, n, anti_hermitian=False, traceless=False):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    if anti_hermitian:
        a = a - a.conj().T
    if traceless:
        a = a - np.trace(a) / n * np.eye(n)
    return a


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
