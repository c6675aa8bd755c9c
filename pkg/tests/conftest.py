import numpy as np
import pytest

from chm import catalog

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Record a pass/fail line for the acceptance summary."""

    def _record(criterion, ok, detail=""):
        ACCEPTANCE[criterion] = (bool(ok), detail)
        return ok

    return _record


@pytest.fixture(scope="session")
def catalog_hadamards():
    return {name: catalog.build(name) for name in catalog.names()}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0].rstrip("."))):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
