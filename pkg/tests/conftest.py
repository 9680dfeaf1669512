from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cosserat_rayleigh import stroh
from cosserat_rayleigh.material import aluminum_epoxy

settings.register_profile(
    "default", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def alu():
    return aluminum_epoxy()


@pytest.fixture(scope="session")
def alu_ctx(alu):
    return stroh.context(alu, 1.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
