import pytest

from bayeserr import data
from bayeserr.gaussian import oracle_bayes_error, preset
from bayeserr.rng import make_rng


@pytest.fixture(scope="session")
def setup_a():
    return preset("A")


@pytest.fixture(scope="session")
def oracle_a(setup_a):
    return oracle_bayes_error(setup_a, 10**6, make_rng(12345))


@pytest.fixture(scope="session")
def votes_path():
    return str(data.path(data.SYNTHETIC_VOTES))


@pytest.fixture(scope="session")
def hard_labels_path():
    return str(data.path(data.SYNTHETIC_HARD_LABELS))


# acceptance criteria record their verdicts here; printed after the run
CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for line in CRITERIA:
        terminalreporter.write_line(line)
