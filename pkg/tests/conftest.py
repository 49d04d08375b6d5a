import numpy as np
import pytest

from delayh2.pattern import chain_pattern
from delayh2.plants import chain_plant, random_plant, sweep_plant
from delayh2.synthesis import synthesize


@pytest.fixture(scope='session')
def chain():
    return chain_plant()


@pytest.fixture(scope='session')
def sweep():
    return sweep_plant()


@pytest.fixture(scope='session')
def chain_pat():
    return chain_pattern([1, 1, 1], [1, 1, 1])


@pytest.fixture(scope='session')
def chain_result(chain, chain_pat):
    return synthesize(chain, chain_pat)


@pytest.fixture(scope='session')
def random_plants():
    rng = np.random.default_rng(12345)
    return [random_plant(rng) for _ in range(20)]


def random_stable(rng, n, rho=0.8):
    A = rng.standard_normal((n, n))
    return A * rho / np.max(np.abs(np.linalg.eigvals(A)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section('acceptance criteria')
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
