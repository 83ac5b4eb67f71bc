import numpy as np
import pytest

from couette_slip.eigen import cached_grid


@pytest.fixture(scope="session")
def grid64():
    return cached_grid(64)


@pytest.fixture(scope="session")
def grid96():
    return cached_grid(96)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
