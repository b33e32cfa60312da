import json
from pathlib import Path

import pytest

from rose import FLAT, HYPERBOLIC, get_metric, get_table

GOLDEN = json.loads(Path(__file__).with_name("golden.json").read_text())

# criterion lines collected by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


@pytest.fixture(params=[FLAT, HYPERBOLIC], ids=["flat", "hyperbolic"])
def metric(request):
    return get_metric(request.param)


@pytest.fixture
def flat():
    return get_metric(FLAT)


@pytest.fixture
def hyper():
    return get_metric(HYPERBOLIC)


@pytest.fixture
def table():
    return get_table(FLAT)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
