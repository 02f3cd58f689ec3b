"""Shared fixtures: one engine and one warm ladder table per session.

The table is built fresh (no cache file) so every run exercises the
cold-start path once; individual tests that need persistence write
their own cache files under tmp paths.
"""

import pytest

from zetalab import EngineConfig, HardyIntegralTable, LadderTable, ZetaEngine
from zetalab.bohr import StripLayout


@pytest.fixture(scope="session")
def engine():
    return ZetaEngine(EngineConfig())


@pytest.fixture(scope="session")
def lt(engine):
    return LadderTable(hardy=HardyIntegralTable(engine, tol=1e-9))


@pytest.fixture(scope="session")
def layout():
    return StripLayout()


# one verdict line per acceptance criterion, echoed after the run so the
# terminal shows them even with output capture on
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
