import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rmtlab.painleve2 import tracy_widom  # noqa: E402
from rmtlab.painleve5 import gaudin  # noqa: E402

DATA = Path(__file__).parent / "data"
ZETA_FIXTURE = DATA / "zeta_zeros_1e4.txt"


@pytest.fixture(scope="session")
def tw():
    return tracy_widom()


@pytest.fixture(scope="session")
def gaudin_solution():
    return gaudin()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
