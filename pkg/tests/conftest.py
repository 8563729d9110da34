import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import five_date_events  # noqa: E402


@pytest.fixture
def five_date():
    return five_date_events()


@pytest.fixture
def five_date_path(tmp_path, five_date):
    from dynastream import save_dgs

    path = tmp_path / "five_date.dgs"
    save_dgs(five_date, path, "five_date")
    return path


def pytest_terminal_summary(terminalreporter):
    import helpers

    lines = getattr(helpers, "ACCEPTANCE_RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
